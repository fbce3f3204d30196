#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "parityseq/binomial.hpp"
#include "parityseq/rational.hpp"

namespace parityseq {

/// Dense univariate polynomial over Rational.  coeff(i) is the coefficient
/// of x^i; trailing zeros are trimmed, so the leading coefficient is nonzero
/// unless the polynomial is identically zero (empty coefficient vector).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Rational& v) { return Polynomial({v}); }
    static Polynomial monomial(const Rational& v, std::size_t deg) {
        std::vector<Rational> c(deg + 1);
        c[deg] = v;
        return Polynomial(std::move(c));
    }

    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Rational& s, Polynomial p) {
        for (auto& v : p.c_) v = s * v;
        p.trim();
        return p;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// P(1-x), expanded by substituting each x^j with (1-x)^j.
    Polynomial at_one_minus_x() const {
        Polynomial out;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j].is_zero()) continue;
            std::vector<Rational> term(j + 1);
            for (std::size_t i = 0; i <= j; ++i)
                term[i] = c_[j] * Rational((i % 2 == 0 ? Int(1) : Int(-1)) *
                                           int_binomial(static_cast<long long>(j),
                                                        static_cast<long long>(i)));
            out += Polynomial(std::move(term));
        }
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].str();
            if (i > 0) s += "*x^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// (1+x)^k as a polynomial.
inline Polynomial one_plus_x_pow(long long k) {
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1);
    for (long long i = 0; i <= k; ++i) c[static_cast<std::size_t>(i)] = Rational(int_binomial(k, i));
    return Polynomial(std::move(c));
}

}  // namespace parityseq
