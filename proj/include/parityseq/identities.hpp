#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parityseq/binomial.hpp"
#include "parityseq/errors.hpp"
#include "parityseq/polynomial.hpp"
#include "parityseq/rational.hpp"
#include "parityseq/sequences.hpp"
#include "parityseq/transforms.hpp"

namespace parityseq {

/// Parameters for verify_identity.  Each identity reads the fields it needs
/// and rejects missing or out-of-range ones.
struct IdentityArgs {
    std::optional<SequenceHandle> seq;   // primary sequence (A)
    std::optional<SequenceHandle> seq2;  // auxiliary sequence (a) for pair identities
    long long n = -1;
    long long m = -1;
    std::optional<long long> p;        // truncation index (C2.5)
    std::optional<long long> r;        // reciprocal-binomial order (E2.5)
    std::optional<Rational> lambda;    // weight parameter (T2.7, C2.6, C2.7)
    std::optional<Rational> b, c;      // Lucas parameters (E2.6, E2.7)
    std::optional<Rational> shift;     // hypothesis shift of seq (C2.5, T2.6)
    std::optional<Rational> shift2;    // hypothesis shift of seq2 (T2.6)
    std::vector<Rational> f_table;     // finite weight table (T2.10)
};

/// Exact evaluation of one identity instance.  pass holds exactly when the
/// residual lhs - rhs is 0/1.
struct IdentityReport {
    std::string id;
    std::string params;
    Rational lhs;
    Rational rhs;
    Rational residual;
    bool pass = false;
};

enum class ScanStatus { pass, fail, skip, error };

inline std::string to_string(ScanStatus s) {
    switch (s) {
        case ScanStatus::pass: return "pass";
        case ScanStatus::fail: return "fail";
        case ScanStatus::skip: return "skip";
        case ScanStatus::error: return "error";
    }
    return "?";
}

struct IdentityOutcome {
    ScanStatus status = ScanStatus::error;
    std::optional<IdentityReport> report;  // present for pass/fail
    std::string detail;                    // skip or error reason
    std::string params;
};

namespace detail {

inline Rational RB(long long n, long long k) { return Rational(int_binomial(n, k)); }

inline std::string format_params(const IdentityArgs& a) {
    std::string s;
    auto add = [&s](const std::string& item) {
        if (!s.empty()) s += ",";
        s += item;
    };
    if (a.seq && a.seq->valid()) add("seq=" + a.seq->name());
    if (a.seq2 && a.seq2->valid()) add("seq2=" + a.seq2->name());
    if (a.n >= 0) add("n=" + std::to_string(a.n));
    if (a.m >= 0) add("m=" + std::to_string(a.m));
    if (a.p) add("p=" + std::to_string(*a.p));
    if (a.r) add("r=" + std::to_string(*a.r));
    if (a.lambda) add("lambda=" + a.lambda->str());
    if (a.b) add("b=" + a.b->str());
    if (a.c) add("c=" + a.c->str());
    if (a.shift) add("shift=" + a.shift->str());
    if (a.shift2) add("shift2=" + a.shift2->str());
    if (!a.f_table.empty()) add("ftable_len=" + std::to_string(a.f_table.size()));
    return s;
}

inline IdentityReport make_report(const std::string& id, const IdentityArgs& args,
                                  const Rational& lhs, const Rational& rhs, bool extra_ok = true) {
    IdentityReport rep;
    rep.id = id;
    rep.params = format_params(args);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = lhs - rhs;
    rep.pass = rep.residual.is_zero() && extra_ok;
    return rep;
}

inline const SequenceHandle& need_seq(const IdentityArgs& a, const std::string& id) {
    if (!a.seq || !a.seq->valid()) throw hypothesis_error(id + ": requires a sequence (--seq)");
    return *a.seq;
}

inline const SequenceHandle& need_seq2(const IdentityArgs& a, const std::string& id) {
    if (!a.seq2 || !a.seq2->valid())
        throw hypothesis_error(id + ": requires a second sequence (--seq2)");
    return *a.seq2;
}

inline Rational need_lambda(const IdentityArgs& a, const std::string& id) {
    if (!a.lambda) throw hypothesis_error(id + ": requires the parameter lambda");
    return *a.lambda;
}

/// Parity hypotheses are certified on a window at least this long, so that
/// leading zeros cannot masquerade as an ambiguous class.
inline std::size_t parity_window(long long needed) {
    return static_cast<std::size_t>(needed < 8 ? 8 : needed);
}

/// Classify up to `upto` and return +1 (even) or -1 (odd); an all-zero
/// prefix counts as either.  `expected` = 0 accepts both classes.
inline int checked_parity(const SequenceHandle& s, std::size_t upto, const std::string& id,
                          int expected) {
    const auto rep = classify(s, upto);
    if (rep.verdict == ParityReport::Verdict::Neither) {
        std::string msg = id + ": sequence " + s.name() + " is neither even nor odd up to n=" +
                          std::to_string(upto);
        if (rep.first_violation)
            msg += " (first violation at n=" + std::to_string(rep.first_violation->n) + ")";
        throw hypothesis_error(msg);
    }
    if (rep.both) return expected >= 0 ? +1 : -1;
    const int sign = rep.is_even() ? +1 : -1;
    if (expected != 0 && sign != expected)
        throw hypothesis_error(id + ": sequence " + s.name() + " must be " +
                               (expected > 0 ? "even" : "odd") + ", classified " +
                               to_string(rep.verdict));
    return sign;
}

}  // namespace detail

/// The five equivalent symmetry statements for P_m(x) = sum_k a_k x^{m-k}
/// and P*_m(x) = sum_k a_k x^k, with the shared sign `sign`:
///   a) (1-x)^m P*(x/(x-1)) = sign * P*(x)             [polynomial arithmetic]
///   b) P(1-x) = sign * (-1)^m P(x)                    [substitution]
///   c) the m+1 truncated shifted-transform equalities [direct sums]
///   d) the padded infinite version to 2m+2 terms      [Moebius engine]
///   e) sum_k binom(n,k) a_k/binom(m,k) = sign (-1)^n a_n/binom(m,n), n <= m
struct PolySymmetryReport {
    bool a = false, b = false, c = false, d = false, e = false;
    bool all_equal() const { return a == b && b == c && c == d && d == e; }
    bool all_true() const { return a && b && c && d && e; }
};

inline PolySymmetryReport poly_symmetry_check(const std::vector<Rational>& coeffs, int sign) {
    if (coeffs.size() < 2) throw std::invalid_argument("poly_symmetry_check: requires m >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("poly_symmetry_check: sign must be +-1");
    const long long m = static_cast<long long>(coeffs.size()) - 1;
    const Rational sgn(sign);
    PolySymmetryReport out;

    // (a) polynomial identity: sum_k a_k (-1)^k x^k (1-x)^{m-k} = sign * P*(x)
    {
        Polynomial lhs;
        const Polynomial one_minus_x({Rational(1), Rational(-1)});
        Polynomial pow_acc = Polynomial::constant(Rational(1));  // (1-x)^j
        std::vector<Polynomial> pows(static_cast<std::size_t>(m) + 1);
        for (long long j = 0; j <= m; ++j) {
            pows[static_cast<std::size_t>(j)] = pow_acc;
            pow_acc = pow_acc * one_minus_x;
        }
        for (long long k = 0; k <= m; ++k) {
            Rational c = coeffs[static_cast<std::size_t>(k)];
            if (k % 2 == 1) c = -c;
            lhs += c * (Polynomial::monomial(Rational(1), static_cast<std::size_t>(k)) *
                        pows[static_cast<std::size_t>(m - k)]);
        }
        out.a = lhs == sgn * Polynomial(coeffs);
    }

    // (b) P(1-x) = sign * (-1)^m P(x)
    {
        std::vector<Rational> pc(coeffs.rbegin(), coeffs.rend());  // coefficient of x^i is a_{m-i}
        const Polynomial P(pc);
        Rational factor = sgn;
        if (m % 2 == 1) factor = -factor;
        out.b = P.at_one_minus_x() == factor * P;
    }

    // (c) direct truncated sums for n = 0..m
    {
        out.c = true;
        for (long long n = 0; n <= m && out.c; ++n) {
            Rational sum(0);
            for (long long k = 0; k <= n; ++k) {
                Rational t = gen_binomial(Rational(n - m - 1), k) *
                             coeffs[static_cast<std::size_t>(n - k)];
                sum += ((n - k) % 2 == 0) ? t : -t;
            }
            out.c = sum == sgn * coeffs[static_cast<std::size_t>(n)];
        }
    }

    // (d) padded version through the Moebius engine, 2m+2 terms
    {
        std::vector<Rational> padded = coeffs;
        padded.resize(static_cast<std::size_t>(2 * m + 2));
        const auto t = gf_mobius_transform(padded, Rational(m));
        out.d = true;
        for (std::size_t i = 0; i < padded.size() && out.d; ++i)
            out.d = t[i] == sgn * padded[i];
    }

    // (e) sum_k binom(n,k) a_k / binom(m,k) = sign (-1)^n a_n / binom(m,n)
    {
        out.e = true;
        for (long long n = 0; n <= m && out.e; ++n) {
            Rational sum(0);
            for (long long k = 0; k <= n; ++k)
                sum += detail::RB(n, k) * coeffs[static_cast<std::size_t>(k)] /
                       Rational(int_binomial(m, k));
            Rational rhs = sgn * coeffs[static_cast<std::size_t>(n)] / Rational(int_binomial(m, n));
            if (n % 2 == 1) rhs = -rhs;
            out.e = sum == rhs;
        }
    }
    return out;
}

namespace detail {

struct IdentityDef {
    std::string id;
    std::string summary;
    // Names of integer parameters a scan may range over.
    std::vector<std::string> range_params;
    // Reason this parameter tuple is out of scope (wrong n parity, below the
    // lower bound, ...); scans record these as skips.
    std::function<std::optional<std::string>(const IdentityArgs&)> applicable;
    // Exact evaluation; throws hypothesis_error for input-level violations.
    std::function<IdentityReport(const IdentityArgs&)> evaluate;
};

inline std::optional<std::string> need_n_at_least(const IdentityArgs& a, long long lo) {
    if (a.n < lo) return "requires n >= " + std::to_string(lo);
    return std::nullopt;
}

inline std::optional<std::string> need_odd_n(const IdentityArgs& a, long long lo) {
    if (auto r = need_n_at_least(a, lo)) return r;
    if (a.n % 2 == 0) return "requires odd n";
    return std::nullopt;
}

inline std::optional<std::string> need_even_n(const IdentityArgs& a, long long lo) {
    if (auto r = need_n_at_least(a, lo)) return r;
    if (a.n % 2 == 1) return "requires even n";
    return std::nullopt;
}

inline std::optional<std::string> need_nm(const IdentityArgs& a) {
    if (a.n < 0 || a.m < 0) return "requires n >= 0 and m >= 0";
    return std::nullopt;
}

// Lettered variants of one family partition by sequence parity, so in a
// scan the class selects the applicable form.  Mismatches are out of scope;
// unclassifiable sequences still fail in the evaluator.
inline std::optional<std::string> variant_parity_gate(const std::optional<SequenceHandle>& seq,
                                                      long long window, int expected) {
    if (!seq || !seq->valid()) return std::nullopt;
    const auto rep = classify(*seq, parity_window(window));
    if (rep.verdict == ParityReport::Verdict::Neither || rep.both) return std::nullopt;
    if ((expected > 0) != rep.is_even())
        return std::string("applies to ") + (expected > 0 ? "even" : "odd") + " sequences";
    return std::nullopt;
}

// The (sequence parity, n parity) pairing: even sequences go with odd n and
// odd sequences with even n.  Applicability only; Neither-class sequences
// are left for the evaluator to reject as hypothesis errors.
inline std::optional<std::string> parity_pairing_gate(const IdentityArgs& a, long long lo) {
    if (a.n < lo) return "requires n >= " + std::to_string(lo);
    if (a.seq && a.seq->valid()) {
        const auto rep = classify(*a.seq, parity_window(a.n));
        if (rep.verdict != ParityReport::Verdict::Neither && !rep.both &&
            rep.is_even() == (a.n % 2 == 0))
            return "requires (even sequence, odd n) or (odd sequence, even n)";
    }
    return std::nullopt;
}

// ---- individual evaluators -------------------------------------------------

inline IdentityReport eval_T2_1(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.1");
    checked_parity(A, parity_window(args.n), "T2.1", +1);
    const long long n = args.n;
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        Rational t = gen_binomial(Rational(n, 2), k) * A.term(static_cast<std::size_t>(n - k));
        sum += (k % 2 == 0) ? t : -t;
    }
    return make_report("T2.1", args, sum, Rational(0));
}

inline IdentityReport eval_C2_1a(const IdentityArgs& args) {
    auto B = make_sequence(SequenceKind::bernoulli);
    const long long n = args.n;
    Rational sum(0);
    for (long long k = 0; k <= n; ++k)
        sum += gen_binomial(Rational(n, 2), k) * B.term(static_cast<std::size_t>(n - k));
    return make_report("C2.1a", args, sum, Rational(0));
}

inline IdentityReport eval_C2_1b(const IdentityArgs& args) {
    auto B = make_sequence(SequenceKind::bernoulli);
    const long long n = args.n;
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        const long long j = n - k + 1;
        sum += gen_binomial(Rational(n, 2), k) * (pow_int(Rational(2), j) - Rational(1)) *
               B.term(static_cast<std::size_t>(j)) / Rational(j);
    }
    return make_report("C2.1b", args, sum, Rational(0));
}

inline IdentityReport eval_T2_2a(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.2a");
    const long long n = args.n;
    checked_parity(A, parity_window(2 * n), "T2.2a", -1);
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        Rational t = RB(n, k) * A.term(static_cast<std::size_t>(2 * n - k));
        sum += (k % 2 == 0) ? t : -t;
    }
    return make_report("T2.2a", args, sum, Rational(0));
}

inline IdentityReport eval_T2_2b(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.2b");
    const long long n = args.n;
    checked_parity(A, parity_window(2 * n), "T2.2b", +1);
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        const long long w = 2 * n - k;
        if (w == 0) continue;  // weight zero; never evaluates A at index -1
        Rational t = RB(n, k) * Rational(w) * A.term(static_cast<std::size_t>(w - 1));
        sum += (k % 2 == 0) ? t : -t;
    }
    return make_report("T2.2b", args, sum, Rational(0));
}

// The A_{2n-k+1}/(2n-k+1) variant carries a boundary term: for even A,
//   sum_k binom(n,k)(-1)^k A_{2n-k+1}/(2n-k+1) = (-1)^n A_0 / (2(2n+1) binom(2n,n)),
// which vanishes exactly in the A_0 = 0 case.  (Decompose A_{j+1}/(j+1) as an
// odd part plus A_0/2 times the even sequence 1/(j+1), and use
// sum_k binom(n,k)(-1)^k/(2n+1-k) = (-1)^n / ((2n+1) binom(2n,n)).)
inline IdentityReport eval_T2_2c(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.2c");
    const long long n = args.n;
    checked_parity(A, parity_window(2 * n + 1), "T2.2c", +1);
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        const long long w = 2 * n - k + 1;
        Rational t = RB(n, k) * A.term(static_cast<std::size_t>(w)) / Rational(w);
        sum += (k % 2 == 0) ? t : -t;
    }
    Rational rhs = A.term(0) / (Rational(2) * Rational(2 * n + 1) * Rational(int_binomial(2 * n, n)));
    if (n % 2 == 1) rhs = -rhs;
    return make_report("T2.2c", args, sum, rhs);
}

inline IdentityReport eval_C2_2(const IdentityArgs& args) {
    auto E = make_sequence(SequenceKind::euler);
    const long long n = args.n;
    Rational sum(0);
    for (long long k = 0; 2 * k <= n; ++k)
        sum += RB(n, 2 * k) * pow_int(Rational(2), 2 * k) *
               E.term(static_cast<std::size_t>(2 * n - 2 * k));
    return make_report("C2.2", args, sum, Rational(n % 2 == 0 ? 1 : -1));
}

inline IdentityReport eval_C2_3(const IdentityArgs& args) {
    auto B = make_sequence(SequenceKind::bernoulli);
    const long long n = args.n;
    Rational sum(0);
    for (long long r = 1; 2 * r - 1 <= n; ++r)
        sum += RB(n, 2 * r - 1) * Rational(2 * n - 2 * r + 1) *
               B.term(static_cast<std::size_t>(2 * n - 2 * r));
    return make_report("C2.3", args, sum, Rational(0));
}

inline IdentityReport eval_C2_4(const IdentityArgs& args) {
    auto B = make_sequence(SequenceKind::bernoulli);
    const long long n = args.n;
    Rational sum(0);
    for (long long r = 0; 2 * r <= n; ++r)
        sum += RB(n, 2 * r) * (pow_int(Rational(2), 2 * n - 2 * r) - Rational(1)) *
               B.term(static_cast<std::size_t>(2 * n - 2 * r));
    return make_report("C2.4", args, sum, Rational(0));
}

inline IdentityReport eval_L2_3(const IdentityArgs& args) {
    const long long n = args.n, m = args.m;
    Rational sum(0);
    for (long long k = m; k <= n; ++k) {
        Rational t = RB(n, k) * RB(n + k, k) * RB(k, m);
        sum += ((n - k) % 2 == 0) ? t : -t;
    }
    return make_report("L2.3", args, sum, RB(n, m) * RB(m + n, m));
}

inline IdentityReport eval_L2_4(const IdentityArgs& args) {
    const auto& a = need_seq(args, "L2.4");
    const long long n = args.n;
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        Rational inner(0);
        for (long long s = 0; s <= k; ++s) inner += RB(k, s) * a.term(static_cast<std::size_t>(s));
        if ((n - k) % 2 == 1) inner = -inner;
        sum += RB(n, k) * RB(n + k, k) * (a.term(static_cast<std::size_t>(k)) - inner);
    }
    return make_report("L2.4", args, sum, Rational(0));
}

inline IdentityReport eval_T2_3(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.3");
    const long long n = args.n;
    const auto parity = classify(A, parity_window(n));
    if (parity.verdict == ParityReport::Verdict::Neither)
        throw hypothesis_error("T2.3: sequence " + A.name() + " is neither even nor odd");
    // An all-zero window is consistent with either class.
    if (!parity.both && (parity.is_even() == (n % 2 == 0)))
        throw hypothesis_error("T2.3: needs (even sequence, odd n) or (odd sequence, even n)");
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        Rational t = RB(n, k) * RB(n + k, k) * A.term(static_cast<std::size_t>(k));
        sum += (k % 2 == 0) ? t : -t;
    }
    return make_report("T2.3", args, sum, Rational(0));
}

// Shifted-hypothesis check: sum_k binom(n-shift,k)(-1)^{n-k} a_{n-k} = sign a_n
// for all n <= upto, i.e. the prefix is a fixed point of the Moebius
// involution at shift - 1.  Returns the sign, or throws.
inline int checked_shift_parity(const SequenceHandle& s, const Rational& shift, std::size_t upto,
                                const std::string& id) {
    std::vector<Rational> prefix(upto + 1);
    for (std::size_t i = 0; i <= upto; ++i) prefix[i] = s.term(i);
    const auto t = gf_mobius_transform(prefix, shift - Rational(1));
    bool plus = true, minus = true;
    for (std::size_t i = 0; i <= upto && (plus || minus); ++i) {
        if (t[i] != prefix[i]) plus = false;
        if (t[i] != -prefix[i]) minus = false;
    }
    if (plus) return +1;
    if (minus) return -1;
    throw hypothesis_error(id + ": sequence " + s.name() +
                           " does not satisfy the shifted hypothesis with shift " + shift.str());
}

inline IdentityReport eval_T2_6(const IdentityArgs& args) {
    const auto& b = need_seq(args, "T2.6");
    const auto& a = need_seq2(args, "T2.6");
    const Rational shift_b = args.shift.value_or(Rational(0));
    const Rational shift_a = args.shift2.value_or(Rational(0));
    const long long n = args.n;
    const std::size_t upto = parity_window(n);
    const int beta = checked_shift_parity(b, shift_b, upto, "T2.6");
    const int alpha = checked_shift_parity(a, shift_a, upto, "T2.6");
    const int alpha_bit = alpha > 0 ? 0 : 1;
    const int beta_bit = beta > 0 ? 0 : 1;
    if ((alpha_bit + beta_bit + n) % 2 == 0)
        throw hypothesis_error("T2.6: alpha + beta + n must be odd");
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        Rational t = gen_binomial(Rational(n) - shift_a, k) *
                     gen_binomial(Rational(n) - shift_b, n - k) / RB(n, k) *
                     a.term(static_cast<std::size_t>(n - k)) * b.term(static_cast<std::size_t>(k));
        sum += (k % 2 == 0) ? t : -t;
    }
    return make_report("T2.6", args, sum, Rational(0));
}

inline IdentityReport eval_T2_7i(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.7i");
    const auto& a = need_seq2(args, "T2.7i");
    const Rational lambda = need_lambda(args, "T2.7i");
    const long long n = args.n;
    const std::size_t upto = parity_window(2 * n + 1);
    const int sa = checked_parity(a, upto, "T2.7i", 0);
    const int sA = checked_parity(A, upto, "T2.7i", 0);
    if (sa != sA) throw hypothesis_error("T2.7i: sequences must lie in the same parity class");
    Rational sum(0);
    for (long long k = 0; k <= 2 * n + 1; ++k)
        sum += gen_binomial(Rational(2 * n) - lambda, 2 * n + 1 - k) * gen_binomial(lambda, k) *
               a.term(static_cast<std::size_t>(2 * n + 1 - k)) * A.term(static_cast<std::size_t>(k));
    return make_report("T2.7i", args, sum, Rational(0));
}

inline IdentityReport eval_T2_7ii(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.7ii");
    const auto& a = need_seq2(args, "T2.7ii");
    const Rational lambda = need_lambda(args, "T2.7ii");
    const long long n = args.n;
    const std::size_t upto = parity_window(2 * n);
    checked_parity(a, upto, "T2.7ii", +1);
    checked_parity(A, upto, "T2.7ii", -1);
    Rational sum(0);
    for (long long k = 0; k <= 2 * n; ++k)
        sum += gen_binomial(Rational(2 * n - 1) - lambda, 2 * n - k) * gen_binomial(lambda, k) *
               a.term(static_cast<std::size_t>(2 * n - k)) * A.term(static_cast<std::size_t>(k));
    return make_report("T2.7ii", args, sum, Rational(0));
}

inline IdentityReport eval_C2_6i(const IdentityArgs& args) {
    const auto& A = need_seq(args, "C2.6i");
    const Rational lambda = need_lambda(args, "C2.6i");
    const long long n = args.n;
    checked_parity(A, parity_window(2 * n + 1), "C2.6i", +1);
    Rational sum(0);
    for (long long k = 0; k <= 2 * n + 1; ++k)
        sum += gen_binomial(Rational(2 * n + 1) - lambda, 2 * n + 2 - k) * gen_binomial(lambda, k) *
               A.term(static_cast<std::size_t>(k));
    return make_report("C2.6i", args, sum, Rational(0));
}

inline IdentityReport eval_C2_6ii(const IdentityArgs& args) {
    const auto& A = need_seq(args, "C2.6ii");
    const Rational lambda = need_lambda(args, "C2.6ii");
    const long long n = args.n;
    checked_parity(A, parity_window(2 * n), "C2.6ii", -1);
    Rational sum(0);
    for (long long k = 0; k <= 2 * n; ++k)
        sum += gen_binomial(Rational(2 * n) - lambda, 2 * n + 1 - k) * gen_binomial(lambda, k) *
               A.term(static_cast<std::size_t>(k));
    return make_report("C2.6ii", args, sum, Rational(0));
}

inline IdentityReport eval_C2_7i(const IdentityArgs& args) {
    const auto& A = need_seq(args, "C2.7i");
    const Rational lambda = need_lambda(args, "C2.7i");
    const long long n = args.n;
    checked_parity(A, parity_window(2 * n + 1), "C2.7i", +1);
    Rational sum(0);
    for (long long k = 0; k <= 2 * n + 1; ++k)
        sum += gen_binomial(Rational(2 * n) - lambda, 2 * n + 1 - k) * gen_binomial(lambda, k) *
               pow_int(Rational(2), k) * A.term(static_cast<std::size_t>(k));
    return make_report("C2.7i", args, sum, Rational(0));
}

inline IdentityReport eval_C2_7ii(const IdentityArgs& args) {
    const auto& A = need_seq(args, "C2.7ii");
    const Rational lambda = need_lambda(args, "C2.7ii");
    const long long n = args.n;
    checked_parity(A, parity_window(2 * n), "C2.7ii", -1);
    Rational sum(0);
    for (long long k = 0; k <= 2 * n; ++k)
        sum += gen_binomial(Rational(2 * n - 1) - lambda, 2 * n - k) * gen_binomial(lambda, k) *
               pow_int(Rational(2), k) * A.term(static_cast<std::size_t>(k));
    return make_report("C2.7ii", args, sum, Rational(0));
}

inline IdentityReport eval_T2_10(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.10");
    const long long n = args.n;
    if (static_cast<long long>(args.f_table.size()) < n + 1)
        throw hypothesis_error("T2.10: F table must have at least n+1 entries");
    const int sign = checked_parity(A, parity_window(n), "T2.10", 0);
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) {
        Rational inner(0);
        for (long long s = 0; s <= k; ++s) {
            const Rational& Fs = args.f_table[static_cast<std::size_t>(s)];
            const Rational& Fns = args.f_table[static_cast<std::size_t>(n - s)];
            Rational v = (sign > 0) ? Fs - Fns : Fs + Fns;
            if (s % 2 == 1) v = -v;
            inner += RB(k, s) * v;
        }
        Rational t = RB(n, k) * A.term(static_cast<std::size_t>(k)) * inner;
        sum += (k % 2 == 0) ? t : -t;
    }
    return make_report("T2.10", args, sum, Rational(0));
}

// Verified coefficientwise as a polynomial identity in x; the report's
// residual is the sum of the absolute values of the coefficients of the
// left-hand polynomial, which is zero exactly when the polynomial is.
inline IdentityReport eval_C2_8(const IdentityArgs& args) {
    const auto& A = need_seq(args, "C2.8");
    const long long n = args.n;
    const int sign = checked_parity(A, parity_window(n), "C2.8", 0);
    Polynomial lhs;
    for (long long k = 0; k <= n; ++k) {
        // (1+x)^k (1 -+ (-1)^n x^{n-k})
        Polynomial term = one_plus_x_pow(k);
        Rational xcoef(sign > 0 ? -1 : 1);
        if (n % 2 == 1) xcoef = -xcoef;
        term += Polynomial::monomial(xcoef, static_cast<std::size_t>(n - k)) * one_plus_x_pow(k);
        Rational w = RB(n, k) * A.term(static_cast<std::size_t>(k));
        if (k % 2 == 1) w = -w;
        lhs += w * term;
    }
    Rational residual(0);
    for (const auto& coef : lhs.coeffs()) residual += abs(coef);
    return make_report("C2.8", args, residual, Rational(0));
}

inline IdentityReport eval_T2_11(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T2.11");
    const long long n = args.n, m = args.m;
    const int sign = checked_parity(A, parity_window(n + m), "T2.11", 0);
    Rational lhs(0), rhs(0);
    for (long long k = 0; k <= n; ++k) {
        Rational t = RB(n, k) * A.term(static_cast<std::size_t>(k + m));
        lhs += (k % 2 == 0) ? t : -t;
    }
    for (long long k = 0; k <= m; ++k) {
        Rational t = RB(m, k) * A.term(static_cast<std::size_t>(k + n));
        rhs += (k % 2 == 0) ? t : -t;
    }
    if (sign < 0) rhs = -rhs;
    return make_report("T2.11", args, lhs, rhs);
}

inline IdentityReport eval_E2_5(const IdentityArgs& args) {
    const long long n = args.n, m = args.m;
    const long long r = args.r.value_or(1);
    if (r < 1) throw hypothesis_error("E2.5: requires r >= 1");
    Rational lhs(0), rhs(0);
    for (long long k = 0; k <= n; ++k) {
        Rational t = RB(n, k) / Rational(int_binomial(k + m + 2 * r - 1, r));
        lhs += (k % 2 == 0) ? t : -t;
    }
    for (long long k = 0; k <= m; ++k) {
        Rational t = RB(m, k) / Rational(int_binomial(k + n + 2 * r - 1, r));
        rhs += (k % 2 == 0) ? t : -t;
    }
    return make_report("E2.5", args, lhs, rhs);
}

inline IdentityReport eval_E2_lucas(const std::string& id, const IdentityArgs& args, bool v_kind) {
    const long long n = args.n, m = args.m;
    if (!args.b || !args.c) throw hypothesis_error(id + ": requires parameters b and c");
    const Rational b = *args.b, c = *args.c;
    if ((b * (b * b - Rational(4) * c)).is_zero())
        throw hypothesis_error(id + ": requires b(b^2-4c) != 0");
    SequenceParams sp;
    sp.b = b;
    sp.c = c;
    auto seq = make_sequence(v_kind ? SequenceKind::lucas_v_norm : SequenceKind::lucas_u_norm, sp);
    Rational lhs(0), rhs(0);
    for (long long k = 0; k <= n; ++k) {
        Rational t = RB(n, k) * seq.term(static_cast<std::size_t>(k + m));
        lhs += (k % 2 == 0) ? t : -t;
    }
    for (long long k = 0; k <= m; ++k) {
        Rational t = RB(m, k) * seq.term(static_cast<std::size_t>(k + n));
        rhs += (k % 2 == 0) ? t : -t;
    }
    if (!v_kind) rhs = -rhs;
    return make_report(id, args, lhs, rhs);
}

inline IdentityReport eval_C2_5(const IdentityArgs& args) {
    const auto& a = need_seq(args, "C2.5");
    if (!args.shift) throw hypothesis_error("C2.5: requires the hypothesis shift parameter");
    const Rational mm = *args.shift;
    const long long n = args.n;
    const long long p = args.p.value_or(n);
    // Hypothesis: sum_k binom(n-m-1,k)(-1)^{n-k} a_{n-k} = sign a_n, i.e. the
    // prefix is a Moebius fixed point at m itself.
    const int sign = checked_shift_parity(a, mm + Rational(1), parity_window(n), "C2.5");
    Rational lhs(0);
    for (long long k = 0; k <= p; ++k) {
        Rational t = RB(p, k) * gen_binomial(Rational(n) - mm - Rational(1), n - k) / RB(n, k) *
                     a.term(static_cast<std::size_t>(k));
        lhs += (k % 2 == 0) ? t : -t;
    }
    Rational rhs = gen_binomial(Rational(n) - mm - Rational(1), n - p) / RB(n, p) *
                   a.term(static_cast<std::size_t>(p));
    if (sign < 0) rhs = -rhs;
    return make_report("C2.5", args, lhs, rhs);
}

inline IdentityReport eval_T3_1(const IdentityArgs& args) {
    const auto& A = need_seq(args, "T3.1");
    const long long n = args.n;
    const auto parity = classify(A, parity_window(n));
    if (parity.verdict == ParityReport::Verdict::Neither)
        throw hypothesis_error("T3.1: sequence " + A.name() + " is neither even nor odd");
    if (!parity.both && (parity.is_even() == (n % 2 == 0)))
        throw hypothesis_error("T3.1: needs (even sequence, odd n) or (odd sequence, even n)");
    Rational lhs(0), mid(0), full(0);
    for (long long k = 0; k <= n; ++k) {
        const Rational w = RB(n, k);
        if (k % 3 == 0) lhs += w * A.term(static_cast<std::size_t>(n - k));
        if ((n - k) % 3 == 0) mid += w * A.term(static_cast<std::size_t>(k));
        full += w * A.term(static_cast<std::size_t>(k));
    }
    // The two index-filtered sums agree by reindexing k -> n-k, always.
    if (mid != lhs) throw std::logic_error("T3.1: reindexed sums disagree");
    return make_report("T3.1", args, lhs, full / Rational(3));
}

inline IdentityReport eval_C3_1(const IdentityArgs& args) {
    auto B = make_sequence(SequenceKind::bernoulli);
    const long long n = args.n;
    Rational sum(0);
    for (long long k = 3; k <= n; k += 6)
        sum += RB(n, k) * B.term(static_cast<std::size_t>(n - k));
    const Rational rhs = (n % 6 == 1) ? Rational(-n, 6) : Rational(n, 3);
    return make_report("C3.1", args, sum, rhs);
}

inline IdentityReport eval_C3_2(const IdentityArgs& args) {
    auto B = make_sequence(SequenceKind::bernoulli);
    const long long n = args.n;
    Rational sum = Rational(4, 3) * (pow_int(Rational(2), n) - Rational(1)) *
                   B.term(static_cast<std::size_t>(n));
    for (long long k = 1; 6 * k <= n; ++k)
        sum += RB(n, 6 * k) * (pow_int(Rational(2), n - 6 * k) - Rational(1)) *
               B.term(static_cast<std::size_t>(n - 6 * k));
    const Rational rhs = (n % 6 == 4) ? Rational(-n, 6) : Rational(n, 3);
    return make_report("C3.2", args, sum, rhs);
}

inline IdentityReport eval_C3_3(const IdentityArgs& args) {
    auto E = make_sequence(SequenceKind::euler);
    const long long n = args.n;
    Rational sum = E.term(static_cast<std::size_t>(n));
    for (long long k = 1; 6 * k <= n; ++k)
        sum += Rational(3) * RB(n, 6 * k) * pow_int(Rational(2), 6 * k - 2) *
               E.term(static_cast<std::size_t>(n - 6 * k));
    // (-3)^{n/2} is an integer here since n is even.
    const Rational rhs = (Rational(1) + pow_int(Rational(-3), n / 2)) / Rational(2);
    return make_report("C3.3", args, sum, rhs);
}

inline IdentityReport eval_C3_4(const IdentityArgs& args) {
    auto S = make_sequence(SequenceKind::s_seq);
    const long long n = args.n;
    Rational sum = Rational(4) * S.term(static_cast<std::size_t>(n));
    for (long long k = 1; 6 * k <= n; ++k)
        sum += Rational(3) * RB(n, 6 * k) * S.term(static_cast<std::size_t>(n - 6 * k));
    const Rational rhs = (n % 3 == 0) ? Rational(-1) : Rational(2);
    return make_report("C3.4", args, sum, rhs);
}

inline const std::vector<IdentityDef>& identity_registry() {
    using Args = IdentityArgs;
    static const std::vector<IdentityDef> defs = {
        {"T2.1", "half-index vanishing sum over an even sequence (odd n)", {"n"},
         [](const Args& a) { return need_odd_n(a, 1); }, eval_T2_1},
        {"C2.1a", "Bernoulli instance: sum binom(n/2,k) B_{n-k} = 0 (odd n)", {"n"},
         [](const Args& a) { return need_odd_n(a, 1); }, eval_C2_1a},
        {"C2.1b", "Bernoulli-ratio instance of the half-index sum (odd n)", {"n"},
         [](const Args& a) { return need_odd_n(a, 1); }, eval_C2_1b},
        {"T2.2a", "odd A: sum binom(n,k)(-1)^k A_{2n-k} = 0", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             return variant_parity_gate(a.seq, 2 * a.n, -1);
         },
         eval_T2_2a},
        {"T2.2b", "even A: sum binom(n,k)(-1)^k (2n-k) A_{2n-k-1} = 0", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             return variant_parity_gate(a.seq, 2 * a.n, +1);
         },
         eval_T2_2b},
        {"T2.2c", "even A: sum binom(n,k)(-1)^k A_{2n-k+1}/(2n-k+1) with boundary term", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             return variant_parity_gate(a.seq, 2 * a.n + 1, +1);
         },
         eval_T2_2c},
        {"C2.2", "sum binom(n,2k) 2^{2k} E_{2n-2k} = (-1)^n", {"n"},
         [](const Args& a) { return need_n_at_least(a, 0); }, eval_C2_2},
        {"C2.3", "sum binom(n,2r-1)(2n-2r+1) B_{2n-2r} = 0 (n >= 3)", {"n"},
         [](const Args& a) { return need_n_at_least(a, 3); }, eval_C2_3},
        {"C2.4", "sum binom(n,2r)(2^{2n-2r}-1) B_{2n-2r} = 0 (n >= 2)", {"n"},
         [](const Args& a) { return need_n_at_least(a, 2); }, eval_C2_4},
        {"L2.3", "sum binom(n,k)binom(n+k,k)(-1)^{n-k}binom(k,m) = binom(n,m)binom(m+n,m)",
         {"n", "m"},
         [](const Args& a) -> std::optional<std::string> {
             if (a.m < 1 || a.n < a.m) return "requires 1 <= m <= n";
             return std::nullopt;
         },
         eval_L2_3},
        {"L2.4", "weighted vanishing sum for an arbitrary sequence", {"n"},
         [](const Args& a) { return need_n_at_least(a, 1); }, eval_L2_4},
        {"T2.3", "sum binom(n,k)binom(n+k,k)(-1)^k A_k = 0", {"n"},
         [](const Args& a) { return parity_pairing_gate(a, 0); }, eval_T2_3},
        {"T2.6", "mixed-parity vanishing sum with shifted hypotheses", {"n"},
         [](const Args& a) { return need_n_at_least(a, 0); }, eval_T2_6},
        {"T2.7i", "lambda-weighted pair sum, equal parities, length 2n+2", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             if (a.seq && a.seq->valid() && a.seq2 && a.seq2->valid()) {
                 const auto rA = classify(*a.seq, parity_window(2 * a.n + 1));
                 const auto ra = classify(*a.seq2, parity_window(2 * a.n + 1));
                 if (rA.verdict != ParityReport::Verdict::Neither &&
                     ra.verdict != ParityReport::Verdict::Neither && !rA.both && !ra.both &&
                     rA.is_even() != ra.is_even())
                     return "applies to pairs of equal parity";
             }
             return std::nullopt;
         },
         eval_T2_7i},
        {"T2.7ii", "lambda-weighted pair sum, even/odd pair, length 2n+1", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             if (auto r = variant_parity_gate(a.seq, 2 * a.n, -1)) return r;
             return variant_parity_gate(a.seq2, 2 * a.n, +1);
         },
         eval_T2_7ii},
        {"C2.6i", "lambda sum over an even sequence (harmonic weights)", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             return variant_parity_gate(a.seq, 2 * a.n + 1, +1);
         },
         eval_C2_6i},
        {"C2.6ii", "lambda sum over an odd sequence (harmonic weights)", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             return variant_parity_gate(a.seq, 2 * a.n, -1);
         },
         eval_C2_6ii},
        {"C2.7i", "lambda sum over an even sequence (2^k weights)", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             return variant_parity_gate(a.seq, 2 * a.n + 1, +1);
         },
         eval_C2_7i},
        {"C2.7ii", "lambda sum over an odd sequence (2^k weights)", {"n"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             return variant_parity_gate(a.seq, 2 * a.n, -1);
         },
         eval_C2_7ii},
        {"T2.10", "table-weighted vanishing sum", {"n"},
         [](const Args& a) { return need_n_at_least(a, 0); }, eval_T2_10},
        {"C2.8", "(1+x)^k polynomial identity, checked coefficientwise", {"n"},
         [](const Args& a) { return need_n_at_least(a, 0); }, eval_C2_8},
        {"T2.11", "two-index transform symmetry sum_k binom(n,k)(-1)^k A_{k+m}", {"n", "m"},
         [](const Args& a) { return need_nm(a); }, eval_T2_11},
        {"E2.5", "reciprocal-binomial instance of the two-index symmetry", {"n", "m"},
         [](const Args& a) { return need_nm(a); }, eval_E2_5},
        {"E2.6", "normalized Lucas U instance of the two-index symmetry", {"n", "m"},
         [](const Args& a) { return need_nm(a); },
         [](const Args& a) { return eval_E2_lucas("E2.6", a, false); }},
        {"E2.7", "normalized Lucas V instance of the two-index symmetry", {"n", "m"},
         [](const Args& a) { return need_nm(a); },
         [](const Args& a) { return eval_E2_lucas("E2.7", a, true); }},
        {"C2.5", "p-truncated transform identity under a shifted hypothesis", {"n", "p"},
         [](const Args& a) -> std::optional<std::string> {
             if (auto r = need_n_at_least(a, 0)) return r;
             if (a.p && (*a.p < 0 || *a.p > a.n)) return "requires 0 <= p <= n";
             return std::nullopt;
         },
         eval_C2_5},
        {"T3.1", "sum over 3|k equals one third of the full binomial sum", {"n"},
         [](const Args& a) { return parity_pairing_gate(a, 1); }, eval_T3_1},
        {"C3.1", "Ramanujan: 6|k-3 Bernoulli sum equals -n/6 or n/3 (odd n >= 3)", {"n"},
         [](const Args& a) { return need_odd_n(a, 3); }, eval_C3_1},
        {"C3.2", "Ramanujan: 4/3 (2^n-1) B_n plus 6|k tail (even n >= 6)", {"n"},
         [](const Args& a) { return need_even_n(a, 6); }, eval_C3_2},
        {"C3.3", "Lehmer: E_n + 3 sum binom(n,6k) 2^{6k-2} E_{n-6k} (even n >= 6)", {"n"},
         [](const Args& a) { return need_even_n(a, 6); }, eval_C3_3},
        {"C3.4", "4 S_n + 3 sum binom(n,6k) S_{n-6k} = 2 or -1 (odd n)", {"n"},
         [](const Args& a) { return need_odd_n(a, 1); }, eval_C3_4},
    };
    return defs;
}

inline const IdentityDef& find_identity(const std::string& id) {
    for (const auto& def : identity_registry())
        if (def.id == id) return def;
    throw std::invalid_argument("unknown identity id: " + id);
}

}  // namespace detail

/// Groups accepted by the CLI and scans; "T2.2" expands to its three forms.
inline std::vector<std::string> expand_identity_id(const std::string& id) {
    static const std::map<std::string, std::vector<std::string>> groups = {
        {"C2.1", {"C2.1a", "C2.1b"}},
        {"T2.2", {"T2.2a", "T2.2b", "T2.2c"}},
        {"T2.7", {"T2.7i", "T2.7ii"}},
        {"C2.6", {"C2.6i", "C2.6ii"}},
        {"C2.7", {"C2.7i", "C2.7ii"}},
    };
    if (auto it = groups.find(id); it != groups.end()) return it->second;
    (void)detail::find_identity(id);  // validates
    return {id};
}

inline std::vector<std::string> identity_ids() {
    std::vector<std::string> out;
    for (const auto& def : detail::identity_registry()) out.push_back(def.id);
    return out;
}

inline std::string identity_summary(const std::string& id) {
    return detail::find_identity(id).summary;
}

/// Evaluate one identity instance.  Throws hypothesis_error when the stated
/// hypotheses fail (including parameter tuples out of scope) and
/// std::invalid_argument for unknown ids.
inline IdentityReport verify_identity(const std::string& id, const IdentityArgs& args) {
    const auto& def = detail::find_identity(id);
    if (auto reason = def.applicable(args)) throw hypothesis_error(id + ": " + *reason);
    return def.evaluate(args);
}

struct ParamRange {
    std::string name;  // "n", "m", "p", or "r"
    long long lo = 0;
    long long hi = 0;
};

/// Evaluate an identity over a lexicographic parameter grid.  Out-of-scope
/// tuples become skips, hypothesis violations become errors; neither aborts
/// the scan.
inline std::vector<IdentityOutcome> scan_identity(const std::string& id, IdentityArgs args,
                                                  const std::vector<ParamRange>& ranges) {
    const auto& def = detail::find_identity(id);
    std::vector<IdentityOutcome> out;

    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == ranges.size()) {
            IdentityOutcome oc;
            oc.params = detail::format_params(args);
            try {
                if (auto reason = def.applicable(args)) {
                    oc.status = ScanStatus::skip;
                    oc.detail = *reason;
                } else {
                    auto rep = def.evaluate(args);
                    oc.status = rep.pass ? ScanStatus::pass : ScanStatus::fail;
                    oc.params = rep.params;
                    oc.report = std::move(rep);
                }
            } catch (const hypothesis_error& e) {
                oc.status = ScanStatus::error;
                oc.detail = e.what();
            } catch (const std::out_of_range& e) {
                oc.status = ScanStatus::error;
                oc.detail = e.what();
            }
            out.push_back(std::move(oc));
            return;
        }
        const auto& r = ranges[depth];
        for (long long v = r.lo; v <= r.hi; ++v) {
            if (r.name == "n")
                args.n = v;
            else if (r.name == "m")
                args.m = v;
            else if (r.name == "p")
                args.p = v;
            else if (r.name == "r")
                args.r = v;
            else
                throw std::invalid_argument("scan_identity: unknown range parameter '" + r.name +
                                            "'");
            rec(depth + 1);
        }
    };
    if (ranges.empty()) return out;
    rec(0);
    return out;
}

}  // namespace parityseq
