#pragma once

#include <optional>
#include <string>
#include <utility>

#include "parityseq/errors.hpp"
#include "parityseq/rational.hpp"

namespace parityseq {

/// Deterministic trial division; inputs here are desk scale (p < 10^6).
inline bool is_prime(long long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// v_p of a rational; infinite (nullopt) for zero.
inline std::optional<long long> p_valuation(const Rational& r, long long p) {
    if (p < 2) throw std::invalid_argument("p_valuation: p must be >= 2");
    if (r.is_zero()) return std::nullopt;
    const Int pp = p;
    auto count = [&pp](Int x) {
        long long v = 0;
        while (x % pp == 0) {
            x /= pp;
            ++v;
        }
        return v;
    };
    // num and den are coprime, so at most one of them carries p.
    if (r.num() % pp == 0) return count(r.num());
    if (r.den() % pp == 0) return -count(r.den());
    return 0;
}

/// v_p(r) >= t, with v_p(0) = +infinity.
inline bool p_valuation_at_least(const Rational& r, long long p, long long t) {
    const auto v = p_valuation(r, p);
    return !v || *v >= t;
}

/// p-integral: denominator coprime to p.
inline bool is_p_integral(const Rational& r, long long p) {
    return r.den() % Int(p) != 0;
}

inline Int pow_int_exact(long long base, unsigned exp) {
    Int r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

inline Int mod_pow(Int base, Int exp, const Int& mod) {
    Int r = 1;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp % 2 == 1) r = r * base % mod;
        base = base * base % mod;
        exp /= 2;
    }
    return r;
}

/// Inverse of a mod m (m > 1, gcd(a, m) = 1), by extended Euclid.
inline Int mod_inverse(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    Int r0 = m, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
    if (t0 < 0) t0 += m;
    return t0;
}

/// An element of Z/p^k Z, the image of a p-integral rational.
struct Residue {
    long long prime = 0;
    unsigned exponent = 0;
    Int modulus;  // p^exponent
    Int value;    // in [0, modulus)

    friend bool operator==(const Residue& a, const Residue& b) {
        return a.prime == b.prime && a.exponent == b.exponent && a.value == b.value;
    }
};

/// Unique representative of r mod p^k.  Requires v_p(r) >= 0.
inline Residue reduce_mod(const Rational& r, long long p, unsigned k) {
    if (!is_prime(p)) throw hypothesis_error("reduce_mod: " + std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("reduce_mod: k must be >= 1");
    Residue res;
    res.prime = p;
    res.exponent = k;
    res.modulus = pow_int_exact(p, k);
    if (!is_p_integral(r, p))
        throw valuation_error("reduce_mod: " + r.str() + " is not " + std::to_string(p) +
                              "-integral");
    Int num = r.num() % res.modulus;
    if (num < 0) num += res.modulus;
    res.value = num * mod_inverse(r.den(), res.modulus) % res.modulus;
    return res;
}

/// Legendre symbol (a/p) via Euler's criterion.
inline int legendre(const Int& a, long long p) {
    if (!is_prime(p) || p == 2)
        throw hypothesis_error("legendre: p must be an odd prime");
    Int r = mod_pow(a, Int((p - 1) / 2), Int(p));
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

/// Writes p = a^2 + b^2 with a odd, a = 1 (mod 4) as an integer (possibly
/// negative), and b > 0 even.  Exhaustive search; unique under this
/// normalization.  Requires p prime, p = 1 (mod 4).
inline std::pair<Int, Int> two_square_decompose(long long p) {
    if (!is_prime(p)) throw hypothesis_error("two_square_decompose: input is not prime");
    if (p % 4 != 1)
        throw hypothesis_error("two_square_decompose: " + std::to_string(p) + " != 1 (mod 4)");
    for (long long a = 1; a * a < p; a += 2) {
        const long long rest = p - a * a;
        long long b = 0;
        while (b * b < rest) ++b;
        if (b * b == rest) {
            long long signed_a = (a % 4 == 1) ? a : -a;
            return {Int(signed_a), Int(b)};
        }
    }
    throw std::logic_error("two_square_decompose: no representation found");
}

/// Per-prime context for the Fibonacci/Lucas and two-square congruences.
struct PrimeContext {
    long long p = 0;
    int legendre_5 = 0;  // (p/5), 0 when p = 5
    std::optional<std::pair<Int, Int>> two_square;

    static PrimeContext make(long long p) {
        if (!is_prime(p) || p == 2)
            throw hypothesis_error("PrimeContext: p must be an odd prime");
        PrimeContext ctx;
        ctx.p = p;
        ctx.legendre_5 = (p == 5) ? 0 : legendre(Int(p), 5);
        if (p % 4 == 1) ctx.two_square = two_square_decompose(p);
        return ctx;
    }
};

}  // namespace parityseq
