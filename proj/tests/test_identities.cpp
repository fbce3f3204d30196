#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "parityseq/identities.hpp"

#include "support/random_values.hpp"

using namespace parityseq;
using SK = SequenceKind;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

IdentityArgs with_seq(SequenceHandle s, long long n, long long m = -1) {
    IdentityArgs a;
    a.seq = std::move(s);
    a.n = n;
    a.m = m;
    return a;
}

// Pascal-triangle binomials: an oracle path that never touches int_binomial.
struct PascalTable {
    std::vector<std::vector<Rational>> row;
    explicit PascalTable(std::size_t max_n) {
        row.resize(max_n + 1);
        for (std::size_t n = 0; n <= max_n; ++n) {
            row[n].assign(n + 1, R(1));
            for (std::size_t k = 1; k < n; ++k) row[n][k] = row[n - 1][k - 1] + row[n - 1][k];
        }
    }
    Rational operator()(long long n, long long k) const {
        if (k < 0 || k > n) return R(0);
        return row[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
};

}  // namespace

TEST_CASE("double-binomial sum with binom(k,m) weights") {
    PascalTable pascal(20);
    SECTION("worked instance m=1, n=2") {
        IdentityArgs inst;
        inst.n = 2;
        inst.m = 1;
        auto rep = verify_identity("L2.3", inst);
        CHECK(rep.rhs == R(6));  // binom(2,1) binom(3,1)
        CHECK(rep.pass);
    }
    SECTION("brute force over all 1 <= m <= n <= 8") {
        for (long long n = 1; n <= 8; ++n)
            for (long long m = 1; m <= n; ++m) {
                IdentityArgs args;
                args.n = n;
                args.m = m;
                const auto rep = verify_identity("L2.3", args);
                CHECK(rep.pass);
                Rational lhs(0);
                for (long long k = m; k <= n; ++k) {
                    Rational t = pascal(n, k) * pascal(n + k, k) * pascal(k, m);
                    lhs += ((n - k) % 2 == 0) ? t : -t;
                }
                CHECK(rep.lhs == lhs);
                CHECK(rep.rhs == pascal(n, m) * pascal(m + n, m));
            }
    }
    SECTION("parameter gate") {
        const auto outs = scan_identity("L2.3", IdentityArgs{}, {{"n", 0, 3}, {"m", 0, 3}});
        int skips = 0, passes = 0;
        for (const auto& oc : outs) (oc.status == ScanStatus::skip ? skips : passes)++;
        CHECK(skips == 10);  // tuples with m < 1 or m > n
        CHECK(passes == 6);
    }
}

TEST_CASE("weighted vanishing sum holds for arbitrary sequences") {
    auto rng = testsupport::make_rng(301);
    for (int rep = 0; rep < 12; ++rep) {
        auto table = from_terms(testsupport::random_prefix(rng, 9));
        for (long long n = 1; n <= 8; ++n) {
            const auto r = verify_identity("L2.4", with_seq(table, n));
            CHECK(r.pass);
        }
    }
}

TEST_CASE("half-index vanishing sums") {
    for (auto kind : {SK::signed_bernoulli, SK::s_seq, SK::half_pow, SK::central_binom}) {
        for (long long n = 1; n <= 15; n += 2)
            CHECK(verify_identity("T2.1", with_seq(make_sequence(kind), n)).pass);
    }
    CHECK_THROWS_AS(verify_identity("T2.1", with_seq(make_sequence(SK::fibonacci), 3)),
                    hypothesis_error);
    CHECK_THROWS_AS(verify_identity("T2.1", with_seq(make_sequence(SK::half_pow), 4)),
                    hypothesis_error);  // even n out of scope

    SECTION("Bernoulli instances") {
        for (long long n = 1; n <= 15; n += 2) {
            IdentityArgs args;
            args.n = n;
            CHECK(verify_identity("C2.1a", args).pass);
            CHECK(verify_identity("C2.1b", args).pass);
        }
    }
}

TEST_CASE("double-length transforms") {
    for (auto kind : {SK::fibonacci, SK::euler_shift, SK::odd_bernoulli})
        for (long long n = 0; n <= 10; ++n)
            CHECK(verify_identity("T2.2a", with_seq(make_sequence(kind), n)).pass);

    for (auto kind : {SK::half_pow, SK::signed_bernoulli, SK::s_seq})
        for (long long n = 0; n <= 10; ++n)
            CHECK(verify_identity("T2.2b", with_seq(make_sequence(kind), n)).pass);

    SECTION("odd-sequence form rejects even input") {
        CHECK_THROWS_AS(verify_identity("T2.2a", with_seq(make_sequence(SK::half_pow), 3)),
                        hypothesis_error);
    }
}

TEST_CASE("divided double-length transform carries the a_0 boundary term") {
    SECTION("worked values at n = 1") {
        // half_pow: A_3/3 - A_2/2 = 1/24 - 1/8 = -1/12 = -A_0/12
        auto rep = verify_identity("T2.2c", with_seq(make_sequence(SK::half_pow), 1));
        CHECK(rep.lhs == R(-1, 12));
        CHECK(rep.rhs == R(-1, 12));
        CHECK(rep.pass);
        // signed Bernoulli: 0 - (1/6)/2 = -1/12 again
        rep = verify_identity("T2.2c", with_seq(make_sequence(SK::signed_bernoulli), 1));
        CHECK(rep.lhs == R(-1, 12));
        CHECK(rep.pass);
    }
    SECTION("sweep over even sequences") {
        for (auto kind : {SK::half_pow, SK::signed_bernoulli, SK::s_seq, SK::central_binom})
            for (long long n = 0; n <= 10; ++n)
                CHECK(verify_identity("T2.2c", with_seq(make_sequence(kind), n)).pass);
    }
    SECTION("boundary term vanishes when A_0 = 0") {
        auto A = times_n_shift(make_sequence(SK::fibonacci));
        for (long long n = 0; n <= 10; ++n) {
            const auto rep = verify_identity("T2.2c", with_seq(A, n));
            CHECK(rep.rhs == R(0));
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("Euler double sum equals (-1)^n") {
    IdentityArgs args;
    args.n = 1;
    auto rep = verify_identity("C2.2", args);
    CHECK(rep.lhs == R(-1));  // single term E_2
    CHECK(rep.rhs == R(-1));
    for (long long n = 0; n <= 20; ++n) {
        args.n = n;
        CHECK(verify_identity("C2.2", args).pass);
    }
}

TEST_CASE("Bernoulli vanishing sums at doubled index") {
    IdentityArgs args;
    for (long long n = 3; n <= 20; ++n) {
        args.n = n;
        CHECK(verify_identity("C2.3", args).pass);
    }
    for (long long n = 2; n <= 20; ++n) {
        args.n = n;
        CHECK(verify_identity("C2.4", args).pass);
    }
    args.n = 2;
    CHECK_THROWS_AS(verify_identity("C2.3", args), hypothesis_error);
}

TEST_CASE("self-paired binomial vanishing sum") {
    for (auto kind : {SK::signed_bernoulli, SK::s_seq})
        for (long long n = 1; n <= 15; n += 2)
            CHECK(verify_identity("T2.3", with_seq(make_sequence(kind), n)).pass);
    for (auto kind : {SK::fibonacci, SK::euler_shift})
        for (long long n = 0; n <= 14; n += 2)
            CHECK(verify_identity("T2.3", with_seq(make_sequence(kind), n)).pass);
    CHECK_THROWS_AS(verify_identity("T2.3", with_seq(make_sequence(SK::half_pow), 2)),
                    hypothesis_error);
}

TEST_CASE("mixed-parity pair sum") {
    SECTION("plain-parity pairs") {
        // (even a, odd b): alpha+beta+n odd needs even n
        for (long long n = 0; n <= 12; n += 2) {
            IdentityArgs args;
            args.seq = make_sequence(SK::fibonacci);    // b, odd
            args.seq2 = make_sequence(SK::half_pow);    // a, even
            args.n = n;
            CHECK(verify_identity("T2.6", args).pass);
        }
        // (odd, odd): needs odd n
        for (long long n = 1; n <= 13; n += 2) {
            IdentityArgs args;
            args.seq = make_sequence(SK::euler_shift);
            args.seq2 = make_sequence(SK::fibonacci);
            args.n = n;
            CHECK(verify_identity("T2.6", args).pass);
        }
    }
    SECTION("wrong combined parity is a hypothesis error, and the sum is then nonzero") {
        IdentityArgs args;
        args.seq = make_sequence(SK::central_binom);
        args.seq2 = make_sequence(SK::half_pow);
        args.n = 2;
        CHECK_THROWS_AS(verify_identity("T2.6", args), hypothesis_error);
        // direct evaluation of the sum at (a=half_pow, b=central_binom, n=2)
        auto a = make_sequence(SK::half_pow);
        auto b = make_sequence(SK::central_binom);
        Rational sum(0);
        for (long long k = 0; k <= 2; ++k) {
            Rational t = Rational(int_binomial(2, k)) * a.term(static_cast<std::size_t>(2 - k)) *
                         b.term(static_cast<std::size_t>(k));
            sum += (k % 2 == 0) ? t : -t;
        }
        CHECK(sum == R(1, 8));
    }
    SECTION("shifted hypotheses") {
        auto rng = testsupport::make_rng(307);
        const Rational shifts[2] = {R(1, 2), R(1)};
        for (const auto& sa : shifts)
            for (const auto& sb : shifts)
                for (int alpha : {0, 1})
                    for (int beta : {0, 1}) {
                        auto raw_a = testsupport::random_prefix(rng, 14);
                        auto raw_b = testsupport::random_prefix(rng, 14);
                        auto ta = gf_mobius_transform(raw_a, sa - R(1));
                        auto tb = gf_mobius_transform(raw_b, sb - R(1));
                        for (std::size_t i = 0; i < raw_a.size(); ++i) {
                            raw_a[i] = (alpha == 0) ? raw_a[i] + ta[i] : raw_a[i] - ta[i];
                            raw_b[i] = (beta == 0) ? raw_b[i] + tb[i] : raw_b[i] - tb[i];
                        }
                        IdentityArgs args;
                        args.seq2 = from_terms(raw_a, "a");
                        args.seq = from_terms(raw_b, "b");
                        args.shift2 = sa;
                        args.shift = sb;
                        for (long long n = 0; n <= 13; ++n) {
                            if ((alpha + beta + n) % 2 == 0) continue;
                            args.n = n;
                            CHECK(verify_identity("T2.6", args).pass);
                        }
                    }
    }
}

TEST_CASE("lambda-weighted sums are polynomial identities in lambda") {
    // Degree in lambda is at most 2n+2, so vanishing at the sample points
    // plus the fixed set proves each instance identically.
    auto lambda_points = [](long long count) {
        std::vector<Rational> pts = {R(0), R(1, 2), R(-1, 2), R(1), R(2), R(-3), R(7, 3)};
        for (long long j = 0; j < count; ++j) pts.push_back(R(2 * j + 1, 2) + R(j * j));
        return pts;
    };
    SECTION("pair variants") {
        for (long long n = 0; n <= 4; ++n) {
            for (const auto& lam : lambda_points(2 * n + 3)) {
                IdentityArgs args;
                args.n = n;
                args.lambda = lam;
                args.seq = make_sequence(SK::signed_bernoulli);
                args.seq2 = make_sequence(SK::half_pow);
                CHECK(verify_identity("T2.7i", args).pass);
                args.seq = make_sequence(SK::euler_shift);
                args.seq2 = make_sequence(SK::fibonacci);
                CHECK(verify_identity("T2.7i", args).pass);
                args.seq = make_sequence(SK::fibonacci);
                args.seq2 = make_sequence(SK::central_binom);
                CHECK(verify_identity("T2.7ii", args).pass);
            }
        }
        IdentityArgs bad;
        bad.n = 1;
        bad.lambda = R(1);
        bad.seq = make_sequence(SK::half_pow);
        bad.seq2 = make_sequence(SK::fibonacci);
        CHECK_THROWS_AS(verify_identity("T2.7i", bad), hypothesis_error);
    }
    SECTION("single-sequence corollaries") {
        for (long long n = 0; n <= 4; ++n) {
            for (const auto& lam : lambda_points(2 * n + 3)) {
                IdentityArgs args;
                args.n = n;
                args.lambda = lam;
                args.seq = make_sequence(SK::s_seq);
                CHECK(verify_identity("C2.6i", args).pass);
                CHECK(verify_identity("C2.7i", args).pass);
                args.seq = make_sequence(SK::euler_shift);
                CHECK(verify_identity("C2.6ii", args).pass);
                CHECK(verify_identity("C2.7ii", args).pass);
            }
        }
    }
}

TEST_CASE("table-weighted vanishing sum") {
    auto rng = testsupport::make_rng(311);
    for (auto kind : {SK::half_pow, SK::fibonacci}) {
        for (long long n = 0; n <= 8; ++n) {
            IdentityArgs args;
            args.seq = make_sequence(kind);
            args.n = n;
            args.f_table = testsupport::random_prefix(rng, static_cast<std::size_t>(n) + 1);
            CHECK(verify_identity("T2.10", args).pass);
        }
    }
    IdentityArgs args;
    args.seq = make_sequence(SK::half_pow);
    args.n = 5;
    args.f_table = testsupport::random_prefix(rng, 3);  // too short
    CHECK_THROWS_AS(verify_identity("T2.10", args), hypothesis_error);
}

TEST_CASE("(1+x)^k polynomial identity, coefficientwise") {
    for (auto kind : {SK::half_pow, SK::signed_bernoulli, SK::fibonacci, SK::euler_shift})
        for (long long n = 0; n <= 10; ++n)
            CHECK(verify_identity("C2.8", with_seq(make_sequence(kind), n)).pass);
}

TEST_CASE("two-index transform symmetry") {
    SECTION("worked instance") {
        auto rep = verify_identity("T2.11", with_seq(make_sequence(SK::half_pow), 2, 1));
        CHECK(rep.lhs == R(1, 8));
        CHECK(rep.rhs == R(1, 8));
        CHECK(rep.pass);
    }
    for (auto kind : {SK::half_pow, SK::fibonacci, SK::s_seq, SK::euler_shift})
        for (long long n = 0; n <= 8; ++n)
            for (long long m = 0; m <= 8; ++m)
                CHECK(verify_identity("T2.11", with_seq(make_sequence(kind), n, m)).pass);
}

TEST_CASE("reciprocal-binomial and Lucas instances") {
    SECTION("reciprocal binomial") {
        for (long long r = 1; r <= 3; ++r)
            for (long long n = 0; n <= 8; ++n)
                for (long long m = 0; m <= 8; ++m) {
                    IdentityArgs args;
                    args.n = n;
                    args.m = m;
                    args.r = r;
                    CHECK(verify_identity("E2.5", args).pass);
                }
    }
    SECTION("Lucas U and V") {
        const std::pair<long long, long long> params[3] = {{1, -1}, {3, 2}, {2, 3}};
        for (const auto& [b, c] : params)
            for (long long n = 0; n <= 6; ++n)
                for (long long m = 0; m <= 6; ++m) {
                    IdentityArgs args;
                    args.n = n;
                    args.m = m;
                    args.b = R(b);
                    args.c = R(c);
                    CHECK(verify_identity("E2.6", args).pass);
                    CHECK(verify_identity("E2.7", args).pass);
                }
        IdentityArgs degenerate;
        degenerate.n = 1;
        degenerate.m = 1;
        degenerate.b = R(2);
        degenerate.c = R(1);  // b^2 - 4c = 0
        CHECK_THROWS_AS(verify_identity("E2.6", degenerate), hypothesis_error);
    }
}

TEST_CASE("truncated transform identity under shifted hypotheses") {
    SECTION("plain-parity sequences (shift -1)") {
        for (auto kind : {SK::half_pow, SK::fibonacci, SK::central_binom}) {
            for (long long n = 0; n <= 8; ++n)
                for (long long p = 0; p <= n; ++p) {
                    IdentityArgs args;
                    args.seq = make_sequence(kind);
                    args.shift = R(-1);
                    args.n = n;
                    args.p = p;
                    CHECK(verify_identity("C2.5", args).pass);
                }
        }
    }
    SECTION("constructed shifted hypotheses") {
        auto rng = testsupport::make_rng(313);
        for (const auto& shift : {R(0), R(1, 2)}) {
            for (int sign : {+1, -1}) {
                auto raw = testsupport::random_prefix(rng, 10);
                auto t = gf_mobius_transform(raw, shift);
                for (std::size_t i = 0; i < raw.size(); ++i)
                    raw[i] = (sign > 0) ? raw[i] + t[i] : raw[i] - t[i];
                IdentityArgs args;
                args.seq = from_terms(raw);
                args.shift = shift;
                for (long long n = 0; n <= 9; ++n)
                    for (long long p = 0; p <= n; ++p) {
                        args.n = n;
                        args.p = p;
                        CHECK(verify_identity("C2.5", args).pass);
                    }
            }
        }
    }
    SECTION("hypothesis violation") {
        IdentityArgs args;
        args.seq = make_sequence(SK::bernoulli);
        args.shift = R(-1);
        args.n = 4;
        CHECK_THROWS_AS(verify_identity("C2.5", args), hypothesis_error);
    }
}

TEST_CASE("one-third transformation formula") {
    for (auto kind : {SK::signed_bernoulli, SK::s_seq})
        for (long long n = 1; n <= 15; n += 2)
            CHECK(verify_identity("T3.1", with_seq(make_sequence(kind), n)).pass);
    for (auto kind : {SK::fibonacci, SK::euler_shift})
        for (long long n = 2; n <= 14; n += 2)
            CHECK(verify_identity("T3.1", with_seq(make_sequence(kind), n)).pass);
    CHECK_THROWS_AS(verify_identity("T3.1", with_seq(make_sequence(SK::s_seq), 2)),
                    hypothesis_error);
}

TEST_CASE("mod-6 closed forms") {
    SECTION("Bernoulli, odd index") {
        IdentityArgs args;
        args.n = 5;
        auto rep = verify_identity("C3.1", args);
        CHECK(rep.lhs == R(5, 3));  // binom(5,3) B_2
        CHECK(rep.rhs == R(5, 3));
        for (long long n = 3; n <= 21; n += 2) {
            args.n = n;
            CHECK(verify_identity("C3.1", args).pass);
        }
    }
    SECTION("Bernoulli with 2^n - 1 weights, even index; 4/3 lead constant") {
        IdentityArgs args;
        args.n = 6;
        auto rep = verify_identity("C3.2", args);
        CHECK(rep.lhs == R(2));  // (4/3) * 63 * B_6 = 2, tail term vanishes
        CHECK(rep.rhs == R(2));  // n/3 for n = 0 (mod 6)
        for (long long n = 6; n <= 30; n += 2) {
            args.n = n;
            CHECK(verify_identity("C3.2", args).pass);
        }
    }
    SECTION("Euler") {
        IdentityArgs args;
        args.n = 6;
        auto rep = verify_identity("C3.3", args);
        CHECK(rep.lhs == R(-13));  // E_6 + 3*16*E_0 = -61 + 48
        CHECK(rep.rhs == R(-13));  // (1 + (-3)^3)/2
        for (long long n = 6; n <= 30; n += 2) {
            args.n = n;
            CHECK(verify_identity("C3.3", args).pass);
        }
    }
    SECTION("S-sequence") {
        IdentityArgs args;
        for (long long n = 1; n <= 21; n += 2) {
            args.n = n;
            const auto rep = verify_identity("C3.4", args);
            CHECK(rep.rhs == (n % 3 == 0 ? R(-1) : R(2)));
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("polynomial symmetry equivalence") {
    SECTION("Bernoulli cubic is symmetric with the plus sign") {
        // B_3(x) = x^3 - 3/2 x^2 + 1/2 x
        const std::vector<Rational> a = {R(1), R(-3, 2), R(1, 2), R(0)};
        const auto rep = poly_symmetry_check(a, +1);
        CHECK(rep.all_true());
        CHECK(poly_symmetry_check(a, -1).all_equal());
        CHECK_FALSE(poly_symmetry_check(a, -1).all_true());
    }
    SECTION("x^2 + x is not symmetric either way") {
        const std::vector<Rational> a = {R(1), R(1), R(0)};
        for (int sign : {+1, -1}) {
            const auto rep = poly_symmetry_check(a, sign);
            CHECK(rep.all_equal());
            CHECK_FALSE(rep.all_true());
        }
    }
    SECTION("x - 1/2 is antisymmetric about 1/2") {
        const std::vector<Rational> a = {R(1), R(-1, 2)};
        // P(1-x) = -P(x) matches the shared sign +1 at m = 1.
        CHECK(poly_symmetry_check(a, +1).all_true());
        CHECK_FALSE(poly_symmetry_check(a, -1).all_true());
    }
    SECTION("five-way agreement on random coefficient vectors") {
        auto rng = testsupport::make_rng(317);
        for (int i = 0; i < 60; ++i) {
            const auto a = testsupport::random_prefix(rng, 2 + static_cast<std::size_t>(i % 8));
            for (int sign : {+1, -1}) CHECK(poly_symmetry_check(a, sign).all_equal());
        }
    }
    SECTION("constructed symmetric polynomials check all five ways") {
        auto rng = testsupport::make_rng(331);
        for (int i = 0; i < 10; ++i) {
            const Polynomial Q(testsupport::random_prefix(rng, 4));
            if (Q.is_zero()) continue;
            const Polynomial sym = Q * Q.at_one_minus_x();  // P(1-x) = P(x), even degree
            std::vector<Rational> coeffs(sym.coeffs().rbegin(), sym.coeffs().rend());
            CHECK(poly_symmetry_check(coeffs, +1).all_true());

            const Polynomial anti = Polynomial({R(-1, 2), R(1)}) * sym;  // (x - 1/2) P
            std::vector<Rational> acoeffs(anti.coeffs().rbegin(), anti.coeffs().rend());
            CHECK(poly_symmetry_check(acoeffs, +1).all_true());

            // Zero-padded antisymmetric vector flips the shared sign.
            std::vector<Rational> padded = acoeffs;
            padded.insert(padded.begin(), R(0));
            CHECK(poly_symmetry_check(padded, -1).all_true());
        }
    }
}

TEST_CASE("identity scan machinery") {
    SECTION("skips versus errors") {
        IdentityArgs args;
        args.seq = make_sequence(SK::signed_bernoulli);
        const auto outs = scan_identity("T2.1", args, {{"n", 1, 6}});
        REQUIRE(outs.size() == 6);
        for (const auto& oc : outs) {
            if (oc.status == ScanStatus::skip)
                CHECK(oc.detail == "requires odd n");
            else
                CHECK(oc.status == ScanStatus::pass);
        }
        args.seq = make_sequence(SK::fibonacci);
        const auto errs = scan_identity("T2.1", args, {{"n", 1, 4}});
        CHECK(errs[0].status == ScanStatus::error);  // odd sequence fails the hypothesis
        CHECK(errs[1].status == ScanStatus::skip);   // even n out of scope
    }
    SECTION("empty range yields the empty list") {
        CHECK(scan_identity("C2.2", IdentityArgs{}, {}).empty());
        CHECK(scan_identity("C2.2", IdentityArgs{}, {{"n", 5, 4}}).empty());
    }
    SECTION("unknown ids are rejected") {
        CHECK_THROWS_AS(verify_identity("T9.9", IdentityArgs{}), std::invalid_argument);
    }
    SECTION("group expansion") {
        CHECK(expand_identity_id("T2.2") ==
              std::vector<std::string>{"T2.2a", "T2.2b", "T2.2c"});
        CHECK(expand_identity_id("C2.2") == std::vector<std::string>{"C2.2"});
        CHECK_THROWS_AS(expand_identity_id("X1.1"), std::invalid_argument);
    }
}
