#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parityseq/binomial.hpp"
#include "parityseq/rational.hpp"

namespace parityseq {

namespace detail {

/// Memoizing term generator.  compute(n) may read earlier cached terms, and
/// the cache is always filled in index order, so recurrences see a complete
/// prefix.  Cached values are immutable once written.  Handles are not
/// synchronized; use one handle (tree) per thread.
class SequenceImpl {
public:
    explicit SequenceImpl(std::string name) : name_(std::move(name)) {}
    virtual ~SequenceImpl() = default;

    const std::string& name() const { return name_; }

    const Rational& term(std::size_t n) {
        while (cache_.size() <= n) {
            const std::size_t i = cache_.size();
            cache_.push_back(compute(i));
        }
        return cache_[n];
    }

protected:
    virtual Rational compute(std::size_t n) = 0;
    const Rational& cached(std::size_t i) const { return cache_[i]; }

private:
    std::vector<Rational> cache_;
    std::string name_;
};

}  // namespace detail

/// Shared, cheaply copyable reference to a memoizing sequence.
class SequenceHandle {
public:
    SequenceHandle() = default;
    explicit SequenceHandle(std::shared_ptr<detail::SequenceImpl> impl) : impl_(std::move(impl)) {}

    bool valid() const { return impl_ != nullptr; }
    const std::string& name() const { return impl_->name(); }
    const Rational& term(std::size_t n) const { return impl_->term(n); }
    const Rational& operator()(std::size_t n) const { return impl_->term(n); }

    std::shared_ptr<detail::SequenceImpl> impl() const { return impl_; }

private:
    std::shared_ptr<detail::SequenceImpl> impl_;
};

namespace detail {

// B_0 = 1 and sum_{k=0}^{n-1} binom(n,k) B_k = 0 for n >= 2; hence
// B_n = -1/(n+1) * sum_{k<n} binom(n+1,k) B_k, which also yields B_1 = -1/2.
class BernoulliSeq final : public SequenceImpl {
public:
    BernoulliSeq() : SequenceImpl("bernoulli") {}

protected:
    Rational compute(std::size_t n) override {
        if (n == 0) return Rational(1);
        const long long nn = static_cast<long long>(n);
        Rational sum(0);
        for (std::size_t k = 0; k < n; ++k)
            sum += Rational(int_binomial(nn + 1, static_cast<long long>(k))) * cached(k);
        return -sum / Rational(nn + 1);
    }
};

// E_0 = 1, E_{2n-1} = 0, sum_{r=0}^{n} binom(2n,2r) E_{2r} = 0 for n >= 1.
class EulerSeq final : public SequenceImpl {
public:
    EulerSeq() : SequenceImpl("euler") {}

protected:
    Rational compute(std::size_t n) override {
        if (n == 0) return Rational(1);
        if (n % 2 == 1) return Rational(0);
        Rational sum(0);
        for (std::size_t r = 0; 2 * r < n; ++r)
            sum += Rational(int_binomial(static_cast<long long>(n), static_cast<long long>(2 * r))) *
                   cached(2 * r);
        return -sum;
    }
};

// S_n + sum_{k=0}^{n} binom(n,k) S_k = 2.
class SSeq final : public SequenceImpl {
public:
    SSeq() : SequenceImpl("s_seq") {}

protected:
    Rational compute(std::size_t n) override {
        if (n == 0) return Rational(1);
        Rational sum(0);
        for (std::size_t k = 0; k < n; ++k)
            sum += Rational(int_binomial(static_cast<long long>(n), static_cast<long long>(k))) *
                   cached(k);
        return (Rational(2) - sum) / Rational(2);
    }
};

// U_{n+1} = b U_n - c U_{n-1} with (U_0,U_1) = (0,1); V likewise from (2,b).
// When normalized the cache holds w_n = x_n / b^n, satisfying
// w_{n+1} = w_n - (c/b^2) w_{n-1}.
class LucasSeq final : public SequenceImpl {
public:
    LucasSeq(std::string name, Rational b, Rational c, bool v_kind, bool normalized)
        : SequenceImpl(std::move(name)),
          b_(std::move(b)),
          c_(std::move(c)),
          v_kind_(v_kind),
          normalized_(normalized) {
        if (normalized_ && b_.is_zero())
            throw std::invalid_argument("lucas: /b^n normalization requires b != 0");
    }

protected:
    Rational compute(std::size_t n) override {
        if (n == 0) return v_kind_ ? Rational(2) : Rational(0);
        if (n == 1) return normalized_ ? (v_kind_ ? Rational(1) : Rational(1) / b_)
                                       : (v_kind_ ? b_ : Rational(1));
        if (normalized_) return cached(n - 1) - (c_ / (b_ * b_)) * cached(n - 2);
        return b_ * cached(n - 1) - c_ * cached(n - 2);
    }

private:
    Rational b_, c_;
    bool v_kind_;
    bool normalized_;
};

class FormulaSeq final : public SequenceImpl {
public:
    FormulaSeq(std::string name, std::function<Rational(std::size_t)> f)
        : SequenceImpl(std::move(name)), f_(std::move(f)) {}

protected:
    Rational compute(std::size_t n) override { return f_(n); }

private:
    std::function<Rational(std::size_t)> f_;
};

class MappedSeq final : public SequenceImpl {
public:
    MappedSeq(std::string name, SequenceHandle base,
              std::function<Rational(const SequenceHandle&, std::size_t)> f)
        : SequenceImpl(std::move(name)), base_(std::move(base)), f_(std::move(f)) {}

protected:
    Rational compute(std::size_t n) override { return f_(base_, n); }

private:
    SequenceHandle base_;
    std::function<Rational(const SequenceHandle&, std::size_t)> f_;
};

class TableSeq final : public SequenceImpl {
public:
    TableSeq(std::string name, std::vector<Rational> terms)
        : SequenceImpl(std::move(name)), terms_(std::move(terms)) {}

    std::size_t size() const { return terms_.size(); }

protected:
    Rational compute(std::size_t n) override {
        if (n >= terms_.size())
            throw std::out_of_range(name() + ": index " + std::to_string(n) +
                                    " beyond table of length " + std::to_string(terms_.size()));
        return terms_[n];
    }

private:
    std::vector<Rational> terms_;
};

}  // namespace detail

/// Wrap an existing sequence; the base cache is shared, so its terms are
/// computed once no matter how many views reference it.
inline SequenceHandle map_sequence(std::string name, SequenceHandle base,
                                   std::function<Rational(const SequenceHandle&, std::size_t)> f) {
    return SequenceHandle(
        std::make_shared<detail::MappedSeq>(std::move(name), std::move(base), std::move(f)));
}

inline SequenceHandle from_terms(std::vector<Rational> terms, std::string name = "table") {
    return SequenceHandle(std::make_shared<detail::TableSeq>(std::move(name), std::move(terms)));
}

inline SequenceHandle formula_sequence(std::string name, std::function<Rational(std::size_t)> f) {
    return SequenceHandle(std::make_shared<detail::FormulaSeq>(std::move(name), std::move(f)));
}

/// b_n = n * a_{n-1}, b_0 = 0.  Swaps a sequence between the even and odd
/// classes unconditionally.
inline SequenceHandle times_n_shift(const SequenceHandle& a) {
    return map_sequence("times_n_shift(" + a.name() + ")", a,
                        [](const SequenceHandle& base, std::size_t n) {
                            if (n == 0) return Rational(0);
                            return Rational(static_cast<long long>(n)) * base.term(n - 1);
                        });
}

/// b_n = a_{n+1} / (n+1).  Swaps parity classes provided a_0 = 0 (automatic
/// for odd input; a genuine hypothesis for even input).
inline SequenceHandle integrate_shift(const SequenceHandle& a) {
    return map_sequence("integrate_shift(" + a.name() + ")", a,
                        [](const SequenceHandle& base, std::size_t n) {
                            return base.term(n + 1) / Rational(static_cast<long long>(n) + 1);
                        });
}

/// b_n = a_{n+2} - a_{n+1}.  Preserves the parity class.
inline SequenceHandle shifted_difference(const SequenceHandle& a) {
    return map_sequence("shifted_difference(" + a.name() + ")", a,
                        [](const SequenceHandle& base, std::size_t n) {
                            return base.term(n + 2) - base.term(n + 1);
                        });
}

enum class SequenceKind {
    bernoulli,
    euler,
    lucas_u,
    lucas_v,
    lucas_u_norm,
    lucas_v_norm,
    fibonacci,
    lucas_num,
    s_seq,
    signed_bernoulli,
    euler_shift,
    odd_bernoulli,
    bernoulli_ratio,
    half_pow,
    harmonic_recip,
    central_binom,
    recip_binom,
};

struct SequenceParams {
    std::optional<Rational> b;
    std::optional<Rational> c;
    std::optional<long long> m;
};

inline const std::vector<std::pair<std::string, SequenceKind>>& sequence_kind_table() {
    static const std::vector<std::pair<std::string, SequenceKind>> table = {
        {"bernoulli", SequenceKind::bernoulli},
        {"euler", SequenceKind::euler},
        {"lucas_u", SequenceKind::lucas_u},
        {"lucas_v", SequenceKind::lucas_v},
        {"lucas_u_norm", SequenceKind::lucas_u_norm},
        {"lucas_v_norm", SequenceKind::lucas_v_norm},
        {"fibonacci", SequenceKind::fibonacci},
        {"lucas_num", SequenceKind::lucas_num},
        {"s_seq", SequenceKind::s_seq},
        {"signed_bernoulli", SequenceKind::signed_bernoulli},
        {"euler_shift", SequenceKind::euler_shift},
        {"odd_bernoulli", SequenceKind::odd_bernoulli},
        {"bernoulli_ratio", SequenceKind::bernoulli_ratio},
        {"half_pow", SequenceKind::half_pow},
        {"harmonic_recip", SequenceKind::harmonic_recip},
        {"central_binom", SequenceKind::central_binom},
        {"recip_binom", SequenceKind::recip_binom},
    };
    return table;
}

inline SequenceKind sequence_kind_from_string(const std::string& s) {
    for (const auto& [name, kind] : sequence_kind_table())
        if (name == s) return kind;
    throw std::invalid_argument("unknown sequence kind: " + s);
}

inline SequenceHandle make_sequence(SequenceKind kind, const SequenceParams& params = {});

namespace detail {

inline Rational require_param(const std::optional<Rational>& v, const char* kind, const char* name) {
    if (!v) throw std::invalid_argument(std::string(kind) + ": missing parameter " + name);
    return *v;
}

inline SequenceHandle make_lucas(const char* base_name, const SequenceParams& p, bool v_kind,
                                 bool normalized) {
    const Rational b = require_param(p.b, base_name, "b");
    const Rational c = require_param(p.c, base_name, "c");
    const std::string name = std::string(base_name) + ":b=" + b.str() + ",c=" + c.str();
    return SequenceHandle(std::make_shared<LucasSeq>(name, b, c, v_kind, normalized));
}

}  // namespace detail

inline SequenceHandle make_sequence(SequenceKind kind, const SequenceParams& params) {
    using SK = SequenceKind;
    switch (kind) {
        case SK::bernoulli:
            return SequenceHandle(std::make_shared<detail::BernoulliSeq>());
        case SK::euler:
            return SequenceHandle(std::make_shared<detail::EulerSeq>());
        case SK::s_seq:
            return SequenceHandle(std::make_shared<detail::SSeq>());
        case SK::lucas_u:
            return detail::make_lucas("lucas_u", params, false, false);
        case SK::lucas_v:
            return detail::make_lucas("lucas_v", params, true, false);
        case SK::lucas_u_norm:
            return detail::make_lucas("lucas_u_norm", params, false, true);
        case SK::lucas_v_norm:
            return detail::make_lucas("lucas_v_norm", params, true, true);
        case SK::fibonacci:
            return SequenceHandle(std::make_shared<detail::LucasSeq>("fibonacci", Rational(1),
                                                                     Rational(-1), false, false));
        case SK::lucas_num:
            return SequenceHandle(std::make_shared<detail::LucasSeq>("lucas_num", Rational(1),
                                                                     Rational(-1), true, false));
        case SK::signed_bernoulli:
            return map_sequence("signed_bernoulli", make_sequence(SK::bernoulli),
                                [](const SequenceHandle& b, std::size_t n) {
                                    const Rational v = b.term(n);
                                    return n % 2 == 0 ? v : -v;
                                });
        case SK::euler_shift:
            return map_sequence("euler_shift", make_sequence(SK::euler),
                                [](const SequenceHandle& e, std::size_t n) {
                                    return (e.term(n) - Rational(1)) /
                                           pow_int(Rational(2), static_cast<long long>(n));
                                });
        case SK::odd_bernoulli:
            return map_sequence("odd_bernoulli", make_sequence(SK::bernoulli),
                                [](const SequenceHandle& b, std::size_t n) {
                                    const long long nn = static_cast<long long>(n);
                                    Rational v = (pow_int(Rational(2), nn) - Rational(1)) * b.term(n);
                                    return n % 2 == 0 ? v : -v;
                                });
        case SK::bernoulli_ratio:
            return map_sequence("bernoulli_ratio", make_sequence(SK::bernoulli),
                                [](const SequenceHandle& b, std::size_t n) {
                                    const long long nn = static_cast<long long>(n);
                                    Rational v = (pow_int(Rational(2), nn + 1) - Rational(1)) *
                                                 b.term(n + 1) / Rational(nn + 1);
                                    return n % 2 == 0 ? -v : v;  // (-1)^{n+1} factor
                                });
        case SK::half_pow:
            return formula_sequence("half_pow", [](std::size_t n) {
                return pow_int(Rational(1, 2), static_cast<long long>(n));
            });
        case SK::harmonic_recip:
            return formula_sequence("harmonic_recip", [](std::size_t n) {
                return Rational(1, static_cast<long long>(n) + 1);
            });
        case SK::central_binom:
            return formula_sequence("central_binom", [](std::size_t n) {
                const long long nn = static_cast<long long>(n);
                return Rational(int_binomial(2 * nn, nn)) / pow_int(Rational(4), nn);
            });
        case SK::recip_binom: {
            if (!params.m || *params.m < 1)
                throw std::invalid_argument("recip_binom: requires parameter m >= 1");
            const long long m = *params.m;
            return formula_sequence("recip_binom:m=" + std::to_string(m), [m](std::size_t n) {
                const long long nn = static_cast<long long>(n);
                return Rational(1) / Rational(int_binomial(nn + 2 * m - 1, m));
            });
        }
    }
    throw std::invalid_argument("make_sequence: unknown kind");
}

/// Parse "kind" or "kind:b=3,c=2,m=1" into a sequence.
inline SequenceHandle make_sequence(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind_name = spec.substr(0, colon);
    SequenceParams params;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            const std::string item = rest.substr(pos, comma - pos);
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("sequence spec: expected name=value, got '" + item + "'");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            if (key == "b")
                params.b = Rational::from_string(val);
            else if (key == "c")
                params.c = Rational::from_string(val);
            else if (key == "m")
                params.m = std::stoll(val);
            else
                throw std::invalid_argument("sequence spec: unknown parameter '" + key + "'");
            pos = comma + 1;
        }
    }
    return make_sequence(sequence_kind_from_string(kind_name), params);
}

/// Bernoulli polynomial B_n(x) = sum_k binom(n,k) B_k x^{n-k}, evaluated
/// exactly.
inline Rational bernoulli_poly_eval(long long n, const Rational& x) {
    if (n < 0) throw std::invalid_argument("bernoulli_poly_eval: n must be natural");
    SequenceHandle bernoulli = make_sequence(SequenceKind::bernoulli);
    Rational sum(0);
    for (long long k = 0; k <= n; ++k)
        sum += Rational(int_binomial(n, k)) * bernoulli.term(static_cast<std::size_t>(k)) *
               pow_int(x, n - k);
    return sum;
}

}  // namespace parityseq
