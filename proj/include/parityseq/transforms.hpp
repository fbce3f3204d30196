#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parityseq/binomial.hpp"
#include "parityseq/errors.hpp"
#include "parityseq/rational.hpp"
#include "parityseq/sequences.hpp"

namespace parityseq {

/// The alternating binomial transform T(a)_n = sum_{k=0}^n binom(n,k)(-1)^k a_k.
/// T is an involution; sequences with T(a) = a form the even class, T(a) = -a
/// the odd class.
inline Rational alt_transform(const SequenceHandle& a, std::size_t n) {
    Rational sum(0);
    Int binom = 1;  // binom(n, k), updated incrementally
    for (std::size_t k = 0; k <= n; ++k) {
        Rational term = Rational(binom) * a.term(k);
        sum += (k % 2 == 0) ? term : -term;
        binom = binom * static_cast<long long>(n - k) / static_cast<long long>(k + 1);
    }
    return sum;
}

/// Transform of a finite prefix; output has the same length.
inline std::vector<Rational> alt_transform_prefix(const std::vector<Rational>& a) {
    std::vector<Rational> out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        Rational sum(0);
        Int binom = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            Rational term = Rational(binom) * a[k];
            sum += (k % 2 == 0) ? term : -term;
            binom = binom * static_cast<long long>(n - k) / static_cast<long long>(k + 1);
        }
        out[n] = sum;
    }
    return out;
}

struct FirstViolation {
    std::size_t n;
    Rational lhs;  // transform value at n
    Rational rhs;  // +-a_n expected by the sign that survived longest
};

/// Finite-prefix parity classification.  The verdict is a statement about
/// n <= checked_upto only, never about the whole sequence.
struct ParityReport {
    enum class Verdict { EvenUpTo, OddUpTo, Neither };

    std::size_t checked_upto = 0;
    Verdict verdict = Verdict::Neither;
    // Set when the prefix satisfies both sign conditions (all-zero prefix);
    // the verdict then reads EvenUpTo.
    bool both = false;
    std::optional<FirstViolation> first_violation;

    bool is_even() const { return verdict == Verdict::EvenUpTo; }
    bool is_odd() const { return verdict == Verdict::OddUpTo; }
};

inline std::string to_string(ParityReport::Verdict v) {
    switch (v) {
        case ParityReport::Verdict::EvenUpTo: return "EvenUpTo";
        case ParityReport::Verdict::OddUpTo: return "OddUpTo";
        case ParityReport::Verdict::Neither: return "Neither";
    }
    return "?";
}

namespace detail {

template <typename TermAt, typename TransformAt>
ParityReport classify_generic(std::size_t upto, TermAt&& term_at, TransformAt&& transform_at) {
    ParityReport report;
    report.checked_upto = upto;
    bool even_ok = true, odd_ok = true;
    // First index at which each sign fails, with the transform value there.
    std::optional<FirstViolation> even_fail, odd_fail;
    for (std::size_t n = 0; n <= upto && (even_ok || odd_ok); ++n) {
        const Rational t = transform_at(n);
        const Rational& an = term_at(n);
        if (even_ok && t != an) {
            even_ok = false;
            even_fail = FirstViolation{n, t, an};
        }
        if (odd_ok && t != -an) {
            odd_ok = false;
            odd_fail = FirstViolation{n, t, -an};
        }
    }
    if (even_ok && odd_ok) {
        report.verdict = ParityReport::Verdict::EvenUpTo;
        report.both = true;
    } else if (even_ok) {
        report.verdict = ParityReport::Verdict::EvenUpTo;
    } else if (odd_ok) {
        report.verdict = ParityReport::Verdict::OddUpTo;
    } else {
        report.verdict = ParityReport::Verdict::Neither;
        // Smallest n by which both signs have been ruled out: the later of
        // the two first failures, i.e. the sign that survived longest.
        report.first_violation = (even_fail->n >= odd_fail->n) ? *even_fail : *odd_fail;
    }
    return report;
}

}  // namespace detail

inline ParityReport classify(const SequenceHandle& a, std::size_t upto) {
    return detail::classify_generic(
        upto, [&](std::size_t n) -> const Rational& { return a.term(n); },
        [&](std::size_t n) { return alt_transform(a, n); });
}

/// Classify a finite prefix a_0..a_N (N = a.size()-1).
inline ParityReport classify_prefix(const std::vector<Rational>& a) {
    if (a.empty()) throw std::invalid_argument("classify_prefix: empty prefix");
    const std::vector<Rational> t = alt_transform_prefix(a);
    return detail::classify_generic(
        a.size() - 1, [&](std::size_t n) -> const Rational& { return a[n]; },
        [&](std::size_t n) { return t[n]; });
}

/// sum_{k=0}^n binom(n-m, k) (-1)^{n-k} a_{n-k} for rational shift m.  With
/// m = 0 this is the alternating transform of {(-1)^k a_k} times (-1)^n, so
/// it equals +-a_n exactly on the even/odd classes.
inline Rational shifted_transform(const SequenceHandle& a, const Rational& m, std::size_t n) {
    const Rational upper = Rational(static_cast<long long>(n)) - m;
    Rational sum(0);
    for (std::size_t k = 0; k <= n; ++k) {
        Rational term = gen_binomial(upper, static_cast<long long>(k)) * a.term(n - k);
        sum += ((n - k) % 2 == 0) ? term : -term;
    }
    return sum;
}

enum class DerivedOp { times_n_shift, integrate_shift };

/// The two parity-swapping derivations b_n = n a_{n-1} and b_n = a_{n+1}/(n+1).
/// The first swaps classes unconditionally; the second requires a_0 = 0
/// (automatic for odd input) or it misses by the boundary term a_0/(n+1).
inline SequenceHandle derived_odd_even(const SequenceHandle& a, DerivedOp which) {
    switch (which) {
        case DerivedOp::times_n_shift: return times_n_shift(a);
        case DerivedOp::integrate_shift: return integrate_shift(a);
    }
    throw std::invalid_argument("derived_odd_even: unknown operation");
}

/// From an even sequence with A_0 = ... = A_{l-1} = 0 and A_l != 0 (which
/// forces l even), build the even sequence A_{n+l} / ((n+1)...(n+l)).
/// Preconditions are checked on a finite prefix of length check_upto.
inline SequenceHandle divide_factorial_shift(const SequenceHandle& A, std::size_t l,
                                             std::size_t check_upto = 32) {
    if (l < 1) throw std::invalid_argument("divide_factorial_shift: l must be >= 1");
    if (l % 2 != 0)
        throw hypothesis_error("divide_factorial_shift: l = " + std::to_string(l) +
                               " is odd, but A_l = (-1)^l A_l != 0 forces l even");
    for (std::size_t i = 0; i < l; ++i)
        if (!A.term(i).is_zero())
            throw hypothesis_error("divide_factorial_shift: A_" + std::to_string(i) +
                                   " = " + A.term(i).str() + " != 0 in the required zero prefix");
    if (A.term(l).is_zero())
        throw hypothesis_error("divide_factorial_shift: A_" + std::to_string(l) + " must be nonzero");
    const ParityReport parity = classify(A, check_upto);
    if (!parity.is_even())
        throw hypothesis_error("divide_factorial_shift: input is not even up to " +
                               std::to_string(check_upto) +
                               (parity.first_violation
                                    ? " (first violation at n = " +
                                          std::to_string(parity.first_violation->n) + ")"
                                    : ""));
    return map_sequence("divide_factorial_shift(" + A.name() + ",l=" + std::to_string(l) + ")", A,
                        [l](const SequenceHandle& base, std::size_t n) {
                            Rational denom(1);
                            for (std::size_t i = 1; i <= l; ++i)
                                denom *= Rational(static_cast<long long>(n + i));
                            return base.term(n + l) / denom;
                        });
}

/// From an even sequence with a_0 != 0, build the even sequence
/// A_n = (sum_{k<=n} a_k) / ((n+1)(n+2)).
inline SequenceHandle average_transform(const SequenceHandle& a, std::size_t check_upto = 32) {
    if (a.term(0).is_zero())
        throw hypothesis_error("average_transform: requires a_0 != 0");
    const ParityReport parity = classify(a, check_upto);
    if (!parity.is_even())
        throw hypothesis_error("average_transform: input is not even up to " +
                               std::to_string(check_upto));
    return map_sequence("average_transform(" + a.name() + ")", a,
                        [](const SequenceHandle& base, std::size_t n) {
                            Rational sum(0);
                            for (std::size_t k = 0; k <= n; ++k) sum += base.term(k);
                            const long long nn = static_cast<long long>(n);
                            return sum / Rational((nn + 1) * (nn + 2));
                        });
}

/// First N+1 coefficients of (1-x)^m a(x/(x-1)) for rational m, by the
/// closed coefficient formula sum_k binom(n-m-1, k) (-1)^{n-k} a_{n-k}.
/// The map is an involution for every m; with m = -1 it is exactly the
/// alternating binomial transform, so its fixed points (up to sign) are the
/// even/odd prefixes.
inline std::vector<Rational> gf_mobius_transform(const std::vector<Rational>& a, const Rational& m) {
    std::vector<Rational> out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        const Rational upper = Rational(static_cast<long long>(n)) - m - Rational(1);
        Rational sum(0);
        for (std::size_t k = 0; k <= n; ++k) {
            Rational term = gen_binomial(upper, static_cast<long long>(k)) * a[n - k];
            sum += ((n - k) % 2 == 0) ? term : -term;
        }
        out[n] = sum;
    }
    return out;
}

}  // namespace parityseq
