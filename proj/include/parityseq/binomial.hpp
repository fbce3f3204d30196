#pragma once

#include <stdexcept>

#include "parityseq/rational.hpp"

namespace parityseq {

/// binom(n, k) over the integers; 0 when k > n.
inline Int int_binomial(long long n, long long k) {
    if (n < 0 || k < 0) throw std::invalid_argument("int_binomial: arguments must be natural");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is binom(n-k+i, i) after this step
    }
    return r;
}

/// Generalized binomial coefficient binom(x, k) = x(x-1)...(x-k+1)/k! for
/// rational x.  binom(x, 0) = 1.
inline Rational gen_binomial(const Rational& x, long long k) {
    if (k < 0) throw std::invalid_argument("gen_binomial: k must be natural");
    Rational num(1);
    Int den = 1;
    for (long long i = 0; i < k; ++i) {
        num *= x - Rational(i);
        den *= i + 1;
    }
    return num / Rational(den);
}

inline Int factorial(long long n) {
    if (n < 0) throw std::invalid_argument("factorial: n must be natural");
    Int r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace parityseq
