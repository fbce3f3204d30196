#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parityseq/binomial.hpp"
#include "parityseq/errors.hpp"
#include "parityseq/identities.hpp"
#include "parityseq/padic.hpp"
#include "parityseq/rational.hpp"
#include "parityseq/sequences.hpp"
#include "parityseq/transforms.hpp"

namespace parityseq {

struct CongruenceArgs {
    std::optional<SequenceHandle> seq;
    std::optional<Rational> b;
    std::optional<Rational> c;
};

/// One verified congruence lhs = rhs (mod p^exponent).  When either side has
/// negative valuation, both sides are multiplied by p^cleared and compared at
/// modulus p^(exponent+cleared), which keeps every compared quantity
/// p-integral and the check exact.
struct CongruenceCheck {
    std::string id;
    std::string params;
    long long p = 0;
    unsigned exponent = 0;
    unsigned cleared = 0;
    Residue lhs;
    Residue rhs;
    bool pass = false;

    std::string modulus_str() const { return lhs.modulus.str(); }
};

struct CongruenceOutcome {
    long long p = 0;
    ScanStatus status = ScanStatus::error;
    std::optional<CongruenceCheck> check;
    std::string detail;
};

namespace detail {

// Parity classification window for congruence hypotheses.  The hypotheses are
// infinite statements; we certify them on this fixed finite prefix.
constexpr std::size_t kParityWindow = 32;

inline std::string format_congruence_params(const CongruenceArgs& a) {
    std::string s;
    auto add = [&s](const std::string& item) {
        if (!s.empty()) s += ",";
        s += item;
    };
    if (a.seq) add("seq=" + a.seq->name());
    if (a.b) add("b=" + a.b->str());
    if (a.c) add("c=" + a.c->str());
    return s;
}

// Lazily built sequence handles shared across one scan, so a 45-prime sweep
// fills the Bernoulli/Euler caches once.  Each scan (and each direct
// verify_congruence call) owns its workspace; values never depend on it.
struct Workspace {
    std::map<std::string, SequenceHandle> handles;

    const SequenceHandle& get(SequenceKind kind) {
        return get_spec(std::string(sequence_kind_table()[static_cast<std::size_t>(kind)].first));
    }
    const SequenceHandle& get_spec(const std::string& spec) {
        auto it = handles.find(spec);
        if (it == handles.end()) it = handles.emplace(spec, make_sequence(spec)).first;
        return it->second;
    }
    const SequenceHandle& lucas_norm(bool v_kind, const Rational& b, const Rational& c) {
        return get_spec(std::string(v_kind ? "lucas_v_norm" : "lucas_u_norm") + ":b=" + b.str() +
                        ",c=" + c.str());
    }
};

inline CongruenceCheck compare_mod(const std::string& id, const CongruenceArgs& args, long long p,
                                   unsigned exponent, const Rational& lhs, const Rational& rhs) {
    CongruenceCheck out;
    out.id = id;
    out.params = format_congruence_params(args);
    out.p = p;
    out.exponent = exponent;
    long long clear = 0;
    for (const Rational* side : {&lhs, &rhs}) {
        const auto v = p_valuation(*side, p);
        if (v && *v < 0) clear = std::max(clear, -*v);
    }
    out.cleared = static_cast<unsigned>(clear);
    const Rational scale = pow_int(Rational(p), clear);
    const unsigned k = exponent + out.cleared;
    out.lhs = reduce_mod(lhs * scale, p, k);
    out.rhs = reduce_mod(rhs * scale, p, k);
    out.pass = out.lhs.value == out.rhs.value;
    return out;
}

inline const SequenceHandle& need_seq(const CongruenceArgs& a, const std::string& id) {
    if (!a.seq || !a.seq->valid()) throw hypothesis_error(id + ": requires a sequence (--seq)");
    return *a.seq;
}

inline void require_z_p(const SequenceHandle& s, long long p, long long lo, long long hi,
                        const std::string& id) {
    for (long long i = lo; i <= hi; ++i)
        if (!is_p_integral(s.term(static_cast<std::size_t>(i)), p))
            throw valuation_error(id + ": term " + std::to_string(i) + " of " + s.name() + " (" +
                                  s.term(static_cast<std::size_t>(i)).str() + ") is not " +
                                  std::to_string(p) + "-integral");
}

/// +1 for an even sequence, -1 for odd, checked on the parity window.
inline int congruence_parity(const SequenceHandle& s, const std::string& id, int expected) {
    return checked_parity(s, kParityWindow, id, expected);
}

struct CongruenceDef {
    std::string id;
    std::string summary;
    unsigned exponent;  // modulus p^exponent before clearing
    // Reason this prime is out of scope (wrong residue class, small primes);
    // may consult the sequence's parity class.  Scans record these as skips.
    std::function<std::optional<std::string>(long long, const CongruenceArgs&)> applicable;
    // Exact lhs and rhs as rationals.
    std::function<std::pair<Rational, Rational>(long long, const CongruenceArgs&, Workspace&)> sides;
};

inline std::optional<std::string> odd_prime_only(long long p, const CongruenceArgs&) {
    if (p == 2) return "requires an odd prime";
    return std::nullopt;
}

inline std::optional<std::string> prime_gt(long long bound, long long p) {
    if (p <= bound) return "requires p > " + std::to_string(bound);
    return std::nullopt;
}

// Lucas parameter gate: b, c in Z_p and b(b^2-4c) != 0 (mod p).
inline std::optional<std::string> lucas_gate(long long p, const CongruenceArgs& a,
                                             const std::string& id) {
    if (!a.b || !a.c) throw hypothesis_error(id + ": requires parameters b and c");
    if (!is_p_integral(*a.b, p) || !is_p_integral(*a.c, p))
        return "b and c must be p-integral";
    const Rational disc = *a.b * (*a.b * *a.b - Rational(4) * *a.c);
    if (!p_valuation_at_least(disc, p, 0) || reduce_mod(disc, p, 1).value == 0)
        return "requires b(b^2-4c) != 0 (mod p)";
    return std::nullopt;
}

// ---- sum builders ----------------------------------------------------------

// T4.1-style: sum_{k=1}^{p-1} A_k / (p+k)
inline Rational sum_over_p_plus_k(const SequenceHandle& A, long long p) {
    Rational sum(0);
    for (long long k = 1; k <= p - 1; ++k)
        sum += A.term(static_cast<std::size_t>(k)) / Rational(p + k);
    return sum;
}

inline std::pair<Rational, Rational> sides_T4_1(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "T4.1");
    congruence_parity(A, "T4.1", -1);
    require_z_p(A, p, 1, p - 1, "T4.1");
    return {sum_over_p_plus_k(A, p), Rational(0)};
}

inline std::pair<Rational, Rational> sides_C4_1(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "C4.1");
    congruence_parity(A, "C4.1", -1);
    require_z_p(A, p, 1, p - 1, "C4.1");
    Rational lhs(0), rhs(0);
    for (long long k = 1; k <= p - 1; ++k) {
        const Rational& ak = A.term(static_cast<std::size_t>(k));
        lhs += ak / Rational(k);
        rhs += ak / Rational(k * k);
    }
    return {lhs, Rational(p) * rhs};
}

inline std::pair<Rational, Rational> sides_C4_2a(long long p, const CongruenceArgs&, Workspace& ws) {
    const auto& B = ws.get(SequenceKind::bernoulli);
    Rational sum(0);
    for (long long k = 1; 2 * k <= p - 1; ++k)
        sum += (pow_int(Rational(2), 2 * k) - Rational(1)) * B.term(static_cast<std::size_t>(2 * k)) /
               Rational(p + 2 * k);
    return {sum, Rational(p - 1, 2)};
}

// The odd-index numerators E_k - 1 = -1 do not vanish, so the full
// alternating-class sum is the statement that actually holds; it restricts
// to even indices only after moving those terms to the other side.
inline std::pair<Rational, Rational> sides_C4_2b(long long p, const CongruenceArgs&, Workspace& ws) {
    return {sum_over_p_plus_k(ws.get(SequenceKind::euler_shift), p), Rational(0)};
}

inline std::pair<Rational, Rational> sides_C4_3(long long p, const CongruenceArgs& args, Workspace& ws) {
    const auto& U = ws.lucas_norm(false, *args.b, *args.c);
    return {sum_over_p_plus_k(U, p), Rational(0)};
}

inline std::pair<Rational, Rational> sides_C4_4(long long p, const CongruenceArgs&, Workspace& ws) {
    const auto& F = ws.get(SequenceKind::fibonacci);
    const int chi = legendre(Int(p), 5);
    Rational lhs(0);
    for (long long k = 1; k <= p - 1; ++k)
        lhs += F.term(static_cast<std::size_t>(k)) / Rational(k);
    const Rational fp = F.term(static_cast<std::size_t>(p - chi));
    if (!p_valuation_at_least(fp, p, 1))
        throw valuation_error("C4.4: F_{p-(p/5)} is not divisible by p");
    const Rational q = fp / Rational(p);
    Rational rhs = Rational(-chi) * Rational(5 * p, 4) * q * q;
    return {lhs, rhs};
}

inline void require_even_window_hypothesis(const SequenceHandle& A, long long p,
                                           const std::string& id) {
    congruence_parity(A, id, +1);
    require_z_p(A, p, 0, p - 2, id);
    require_z_p(A, p, p, p, id);
    if (!p_valuation_at_least(A.term(static_cast<std::size_t>(p - 1)), p, -1))
        throw valuation_error(id + ": p * A_{p-1} is not p-integral");
}

inline std::pair<Rational, Rational> sides_T4_2(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "T4.2");
    require_even_window_hypothesis(A, p, "T4.2");
    Rational lhs(0);
    for (long long k = 1; k <= p - 2; ++k)
        lhs += A.term(static_cast<std::size_t>(k)) / Rational(p - k);
    const Rational rhs = (Rational(2) * A.term(static_cast<std::size_t>(p)) - A.term(0) -
                          Rational(p) * A.term(static_cast<std::size_t>(p - 1))) /
                         Rational(p);
    return {lhs, rhs};
}

inline std::pair<Rational, Rational> sides_C4_5(long long p, const CongruenceArgs&, Workspace& ws) {
    const auto& B = ws.get(SequenceKind::bernoulli);
    Rational lhs(0);
    for (long long k = 1; 2 * k <= p - 3; ++k)
        lhs += B.term(static_cast<std::size_t>(2 * k)) / Rational(p - 2 * k);
    const Rational rhs =
        Rational(p + 1, 2) -
        (Rational(p) * B.term(static_cast<std::size_t>(p - 1)) + Rational(1)) / Rational(p);
    return {lhs, rhs};
}

inline std::pair<Rational, Rational> sides_C4_6(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "C4.6");
    require_even_window_hypothesis(A, p, "C4.6");
    Rational lhs(0), sum_sq(0);
    for (long long k = 1; k <= p - 2; ++k) {
        const Rational& ak = A.term(static_cast<std::size_t>(k));
        lhs += ak / Rational(k);
        sum_sq += ak / Rational(k * k);
    }
    const Rational rhs = -Rational(p) * sum_sq +
                         (A.term(0) + Rational(p) * A.term(static_cast<std::size_t>(p - 1)) -
                          Rational(2) * A.term(static_cast<std::size_t>(p))) /
                             Rational(p);
    return {lhs, rhs};
}

inline std::pair<Rational, Rational> sides_C4_7(long long p, const CongruenceArgs& args, Workspace& ws) {
    const auto& Vn = ws.lucas_norm(true, *args.b, *args.c);
    Rational lhs(0);
    for (long long k = 1; k <= p - 1; ++k)
        lhs += Vn.term(static_cast<std::size_t>(k)) / Rational(p - k);
    // 2 (V_p - b^p) / (p b^p) = 2 (V_p/b^p - 1) / p
    const Rational rhs =
        Rational(2) * (Vn.term(static_cast<std::size_t>(p)) - Rational(1)) / Rational(p);
    return {lhs, rhs};
}

inline std::pair<Rational, Rational> sides_C4_8(long long p, const CongruenceArgs&, Workspace& ws) {
    const auto& L = ws.get(SequenceKind::lucas_num);
    Rational lhs(0);
    for (long long k = 1; k <= p - 1; ++k)
        lhs += L.term(static_cast<std::size_t>(k)) / Rational(k);
    const Rational rhs =
        Rational(2) * (Rational(1) - L.term(static_cast<std::size_t>(p))) / Rational(p);
    return {lhs, rhs};
}

// ---- central-binomial family (T4.3, C4.9, C4.10, T4.4, T4.5) --------------

// The four T4.3 sums apply the self-paired vanishing sum (registry id T2.3)
// at n = (p-1)/2 to the base sequence, its shifted difference, and its two
// parity-swapped derivations.  The residue class each sum needs therefore
// follows the parity of the DERIVED sequence: length-preserving derivations
// keep the class of a, the other two flip it.
inline std::optional<std::string> t43_gate(long long p, const CongruenceArgs& args,
                                           const std::string& id, bool flipped) {
    if (p == 2) return "requires an odd prime";
    const auto& a = need_seq(args, id);
    int sign = congruence_parity(a, id, 0);
    if (flipped) sign = -sign;
    const long long want = (sign > 0) ? 3 : 1;  // even derived -> p = 3 (mod 4)
    if (p % 4 != want)
        return "requires p = " + std::to_string(want) + " (mod 4) for this sequence";
    return std::nullopt;
}

inline Rational central_binom_sq_sum(long long p,
                                     const std::function<Rational(long long)>& weight) {
    const long long n = (p - 1) / 2;
    Rational sum(0);
    Int cb = 1;  // binom(2k, k)
    for (long long k = 0; k <= n; ++k) {
        const Rational c(cb);
        sum += c * c / pow_int(Rational(16), k) * weight(k);
        cb = cb * (2 * (k + 1)) * (2 * k + 1) / ((k + 1) * (k + 1));
    }
    return sum;
}

inline std::pair<Rational, Rational> sides_T4_3a(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& a = need_seq(args, "T4.3a");
    require_z_p(a, p, 0, (p - 1) / 2, "T4.3a");
    return {central_binom_sq_sum(
                p, [&](long long k) { return a.term(static_cast<std::size_t>(k)); }),
            Rational(0)};
}

inline std::pair<Rational, Rational> sides_T4_3b(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& a = need_seq(args, "T4.3b");
    require_z_p(a, p, 1, (p - 1) / 2 + 2, "T4.3b");
    return {central_binom_sq_sum(p,
                                 [&](long long k) {
                                     return a.term(static_cast<std::size_t>(k + 2)) -
                                            a.term(static_cast<std::size_t>(k + 1));
                                 }),
            Rational(0)};
}

inline std::pair<Rational, Rational> sides_T4_3c(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& a = need_seq(args, "T4.3c");
    require_z_p(a, p, 0, (p - 1) / 2 - 1, "T4.3c");
    return {central_binom_sq_sum(p,
                                 [&](long long k) {
                                     if (k == 0) return Rational(0);
                                     return Rational(k) * a.term(static_cast<std::size_t>(k - 1));
                                 }),
            Rational(0)};
}

inline std::pair<Rational, Rational> sides_T4_3d(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& a = need_seq(args, "T4.3d");
    if (congruence_parity(a, "T4.3d", 0) > 0 && !a.term(0).is_zero())
        throw hypothesis_error("T4.3d: even input requires a_0 = 0 for the a_{k+1}/(k+1) sum");
    require_z_p(a, p, 1, (p - 1) / 2 + 1, "T4.3d");
    return {central_binom_sq_sum(p,
                                 [&](long long k) {
                                     return a.term(static_cast<std::size_t>(k + 1)) /
                                            Rational(k + 1);
                                 }),
            Rational(0)};
}

inline std::pair<Rational, Rational> sides_C4_9(long long p, const CongruenceArgs&, Workspace& ws) {
    const auto& B = ws.get(SequenceKind::bernoulli);
    Rational sum(0);
    for (long long k = 0; 4 * k <= p - 3; ++k) {
        const Rational c(int_binomial(4 * k, 2 * k));
        sum += c * c * B.term(static_cast<std::size_t>(2 * k)) / pow_int(Rational(16), 2 * k);
    }
    return {sum, Rational(-1, 8)};
}

inline std::pair<Rational, Rational> sides_C4_10(long long p, const CongruenceArgs&, Workspace& ws) {
    const auto& E = ws.get(SequenceKind::euler);
    const auto [a, b] = two_square_decompose(p);
    Rational sum(0);
    for (long long k = 0; 4 * k <= p - 1; ++k) {
        const Rational c(int_binomial(4 * k, 2 * k));
        sum += c * c * E.term(static_cast<std::size_t>(2 * k)) / pow_int(Rational(32), 2 * k);
    }
    const Rational ra(a);
    return {sum, Rational(2) * ra - Rational(p) / (Rational(2) * ra)};
}

inline std::optional<std::string> t44_gate(long long p, const CongruenceArgs& args) {
    if (p == 2) return "requires an odd prime";
    const auto& A = need_seq(args, "T4.4");
    const int sign = congruence_parity(A, "T4.4", 0);
    const long long want = (sign > 0) ? 3 : 1;
    if (p % 4 != want)
        return "requires p = " + std::to_string(want) + " (mod 4) for this sequence";
    return std::nullopt;
}

inline std::pair<Rational, Rational> sides_T4_4(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "T4.4");
    require_z_p(A, p, 0, (p - 1) / 2, "T4.4");
    const long long n = (p - 1) / 2;
    Rational sum(0);
    Int cb = 1;
    for (long long k = 0; k <= n; ++k) {
        sum += Rational(cb) / pow_int(Rational(2), k) * A.term(static_cast<std::size_t>(k));
        cb = cb * (2 * (k + 1)) * (2 * k + 1) / ((k + 1) * (k + 1));
    }
    return {sum, Rational(0)};
}

inline std::pair<Rational, Rational> sides_T4_5a(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "T4.5a");
    congruence_parity(A, "T4.5a", -1);
    require_z_p(A, p, (p - 1) / 2, p - 1, "T4.5a");
    const long long n = (p - 1) / 2;
    Rational sum(0);
    Int cb = 1;
    for (long long k = 0; k <= n; ++k) {
        sum += Rational(cb) / pow_int(Rational(4), k) * A.term(static_cast<std::size_t>(p - 1 - k));
        cb = cb * (2 * (k + 1)) * (2 * k + 1) / ((k + 1) * (k + 1));
    }
    return {sum, Rational(0)};
}

inline std::pair<Rational, Rational> sides_T4_5b(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "T4.5b");
    congruence_parity(A, "T4.5b", +1);
    require_z_p(A, p, (p - 3) / 2, p - 2, "T4.5b");
    const long long n = (p - 1) / 2;
    Rational sum(0);
    Int cb = 1;
    for (long long k = 0; k <= n; ++k) {
        sum += Rational(cb) * Rational(k + 1) / pow_int(Rational(4), k) *
               A.term(static_cast<std::size_t>(p - 2 - k));
        cb = cb * (2 * (k + 1)) * (2 * k + 1) / ((k + 1) * (k + 1));
    }
    return {sum, Rational(0)};
}

// The A_{p-k}/(p-k) form keeps its exact coefficients 1/(p-k); the k = 0 term
// is A_p/p, which is p-integral precisely because the underlying exact
// identity holds.  Requires A_0 = 0 (the boundary term of the
// a_{n+1}/(n+1) derivation).
inline std::pair<Rational, Rational> sides_T4_5c(long long p, const CongruenceArgs& args, Workspace&) {
    const auto& A = need_seq(args, "T4.5c");
    congruence_parity(A, "T4.5c", +1);
    if (!A.term(0).is_zero())
        throw hypothesis_error("T4.5c: requires A_0 = 0 (boundary term of the /(n+1) derivation)");
    require_z_p(A, p, (p + 1) / 2, p, "T4.5c");
    const long long n = (p - 1) / 2;
    Rational sum(0);
    Int cb = 1;
    for (long long k = 0; k <= n; ++k) {
        sum += Rational(cb) / pow_int(Rational(4), k) * A.term(static_cast<std::size_t>(p - k)) /
               Rational(p - k);
        cb = cb * (2 * (k + 1)) * (2 * k + 1) / ((k + 1) * (k + 1));
    }
    return {sum, Rational(0)};
}

inline std::pair<Rational, Rational> sides_WOLST(long long p, const CongruenceArgs&, Workspace&) {
    return {Rational(int_binomial(2 * p - 1, p - 1)), Rational(1)};
}

inline const std::vector<CongruenceDef>& congruence_registry() {
    using Args = CongruenceArgs;
    auto odd_only = [](long long p, const Args&) { return odd_prime_only(p, {}); };
    auto gt3 = [](long long p, const Args&) -> std::optional<std::string> {
        return prime_gt(3, p);
    };
    auto gt5 = [](long long p, const Args&) -> std::optional<std::string> {
        return prime_gt(5, p);
    };
    static const std::vector<CongruenceDef> defs = {
        {"T4.1", "odd A: sum_{k=1}^{p-1} A_k/(p+k) = 0 (mod p^2)", 2, odd_only, sides_T4_1},
        {"C4.1", "odd A: sum A_k/k = p sum A_k/k^2 (mod p^2)", 2, odd_only, sides_C4_1},
        {"C4.2a", "sum (2^{2k}-1) B_{2k}/(p+2k) = (p-1)/2 (mod p^2)", 2, odd_only, sides_C4_2a},
        {"C4.2b", "sum (E_k-1)/((p+k) 2^k) = 0 (mod p^2)", 2, odd_only, sides_C4_2b},
        {"C4.3", "sum U_k(b,c)/((p+k) b^k) = 0 (mod p^2)", 2,
         [](long long p, const Args& a) -> std::optional<std::string> {
             if (p == 2) return "requires an odd prime";
             return lucas_gate(p, a, "C4.3");
         },
         sides_C4_3},
        {"C4.4", "sum F_k/k = -(p/5)(5p/4)(F_{p-(p/5)}/p)^2 (mod p^2)", 2, gt5, sides_C4_4},
        {"T4.2", "even A: sum_{k=1}^{p-2} A_k/(p-k) = (2A_p - A_0 - pA_{p-1})/p (mod p^2)", 2, gt3,
         sides_T4_2},
        {"C4.5", "sum B_{2k}/(p-2k) = (p+1)/2 - (pB_{p-1}+1)/p (mod p^2)", 2, gt3, sides_C4_5},
        {"C4.6", "even A: sum A_k/k = -p sum A_k/k^2 + (A_0+pA_{p-1}-2A_p)/p (mod p^2)", 2, gt3,
         sides_C4_6},
        {"C4.7", "sum V_k/((p-k) b^k) = 2(V_p - b^p)/(p b^p) (mod p^2)", 2,
         [](long long p, const Args& a) -> std::optional<std::string> {
             if (auto r = prime_gt(3, p)) return r;
             return lucas_gate(p, a, "C4.7");
         },
         sides_C4_7},
        {"C4.8", "sum L_k/k = 2(1-L_p)/p (mod p^2)", 2, gt5, sides_C4_8},
        {"T4.3a", "sum binom(2k,k)^2 a_k/16^k = 0 (mod p^2)", 2,
         [](long long p, const Args& a) { return t43_gate(p, a, "T4.3a", false); }, sides_T4_3a},
        {"T4.3b", "sum binom(2k,k)^2 (a_{k+2}-a_{k+1})/16^k = 0 (mod p^2)", 2,
         [](long long p, const Args& a) { return t43_gate(p, a, "T4.3b", false); }, sides_T4_3b},
        {"T4.3c", "sum binom(2k,k)^2 k a_{k-1}/16^k = 0 (mod p^2)", 2,
         [](long long p, const Args& a) { return t43_gate(p, a, "T4.3c", true); }, sides_T4_3c},
        {"T4.3d", "sum binom(2k,k)^2 a_{k+1}/((k+1) 16^k) = 0 (mod p^2)", 2,
         [](long long p, const Args& a) { return t43_gate(p, a, "T4.3d", true); }, sides_T4_3d},
        {"C4.9", "sum binom(4k,2k)^2 B_{2k}/16^{2k} = -1/8 (mod p^2), p = 3 (mod 4)", 2,
         [](long long p, const Args&) -> std::optional<std::string> {
             if (auto r = prime_gt(3, p)) return r;
             if (p % 4 != 3) return "requires p = 3 (mod 4)";
             return std::nullopt;
         },
         sides_C4_9},
        {"C4.10", "sum binom(4k,2k)^2 E_{2k}/32^{2k} = 2a - p/(2a) (mod p^2), p = a^2 + b^2", 2,
         [](long long p, const Args&) -> std::optional<std::string> {
             if (p == 2) return "requires an odd prime";
             if (p % 4 != 1) return "requires p = 1 (mod 4)";
             return std::nullopt;
         },
         sides_C4_10},
        {"T4.4", "sum binom(2k,k) A_k/2^k = 0 (mod p)", 1, t44_gate, sides_T4_4},
        {"T4.5a", "odd A: sum binom(2k,k) A_{p-1-k}/4^k = 0 (mod p)", 1, odd_only, sides_T4_5a},
        {"T4.5b", "even A: sum binom(2k,k)(k+1) A_{p-2-k}/4^k = 0 (mod p)", 1, odd_only,
         sides_T4_5b},
        {"T4.5c", "even A, A_0 = 0: sum binom(2k,k) A_{p-k}/(4^k (p-k)) = 0 (mod p)", 1, odd_only,
         sides_T4_5c},
        {"WOLST", "binom(2p-1, p-1) = 1 (mod p^3)", 3, gt3, sides_WOLST},
    };
    return defs;
}

inline const CongruenceDef& find_congruence(const std::string& id) {
    for (const auto& def : congruence_registry())
        if (def.id == id) return def;
    throw std::invalid_argument("unknown congruence id: " + id);
}

}  // namespace detail

inline std::vector<std::string> expand_congruence_id(const std::string& id) {
    static const std::map<std::string, std::vector<std::string>> groups = {
        {"C4.2", {"C4.2a", "C4.2b"}},
        {"T4.3", {"T4.3a", "T4.3b", "T4.3c", "T4.3d"}},
        {"T4.5", {"T4.5a", "T4.5b", "T4.5c"}},
    };
    if (auto it = groups.find(id); it != groups.end()) return it->second;
    (void)detail::find_congruence(id);
    return {id};
}

inline std::vector<std::string> congruence_ids() {
    std::vector<std::string> out;
    for (const auto& def : detail::congruence_registry()) out.push_back(def.id);
    return out;
}

inline std::string congruence_summary(const std::string& id) {
    return detail::find_congruence(id).summary;
}

/// Verify one congruence at one prime.  Composite p, wrong residue classes,
/// parity failures, and non-p-integral terms are hypothesis/valuation
/// errors, never refutations.
inline CongruenceCheck verify_congruence(const std::string& id, long long p,
                                         const CongruenceArgs& args = {}) {
    const auto& def = detail::find_congruence(id);
    if (!is_prime(p))
        throw hypothesis_error(id + ": " + std::to_string(p) + " is not prime");
    if (auto reason = def.applicable(p, args)) throw hypothesis_error(id + ": " + *reason);
    detail::Workspace ws;
    const auto [lhs, rhs] = def.sides(p, args, ws);
    return detail::compare_mod(id, args, p, def.exponent, lhs, rhs);
}

/// Run a congruence over every prime in [lo, hi].  Composites are not
/// enumerated; inapplicable primes are reported as skips; per-prime
/// hypothesis errors are recorded and the scan continues.
inline std::vector<CongruenceOutcome> scan_primes(const std::string& id, long long lo, long long hi,
                                                  const CongruenceArgs& args = {}) {
    const auto& def = detail::find_congruence(id);
    std::vector<CongruenceOutcome> out;
    detail::Workspace ws;
    for (long long p = std::max<long long>(2, lo); p <= hi; ++p) {
        if (!is_prime(p)) continue;
        CongruenceOutcome oc;
        oc.p = p;
        try {
            if (auto reason = def.applicable(p, args)) {
                oc.status = ScanStatus::skip;
                oc.detail = *reason;
            } else {
                const auto [lhs, rhs] = def.sides(p, args, ws);
                auto check = detail::compare_mod(id, args, p, def.exponent, lhs, rhs);
                oc.status = check.pass ? ScanStatus::pass : ScanStatus::fail;
                oc.check = std::move(check);
            }
        } catch (const hypothesis_error& e) {
            oc.status = ScanStatus::error;
            oc.detail = e.what();
        } catch (const valuation_error& e) {
            oc.status = ScanStatus::error;
            oc.detail = e.what();
        }
        out.push_back(std::move(oc));
    }
    return out;
}

}  // namespace parityseq
