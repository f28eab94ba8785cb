#pragma once

#include "coindiff/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace coindiff {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr bool is_odd(Parity p) { return p == Parity::Odd; }
/// (-1)^{|a||b|}
constexpr int sign_rule(Parity a, Parity b) { return is_odd(a) && is_odd(b) ? -1 : 1; }
const char* to_string(Parity p);

/// A graded indeterminate X^index.
struct Var {
    std::uint32_t index = 0;
    Parity parity = Parity::Even;

    friend bool operator==(const Var&, const Var&) = default;
};

/// Canonically ordered product of indeterminates: factors sorted by index,
/// odd factors have exponent 1.
class Monomial {
public:
    struct Factor {
        std::uint32_t var;
        std::uint32_t exp;
        Parity parity;

        friend bool operator==(const Factor&, const Factor&) = default;
    };

    Monomial() = default;
    static Monomial of(Var v, std::uint32_t exp = 1);
    /// Builds from already-canonical factors (sorted, distinct, odd exp 1).
    static Monomial from_factors(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    unsigned degree() const { return degree_; }
    Parity parity() const;
    std::uint32_t exponent(std::uint32_t var) const;
    std::size_t hash() const;

    /// Total degree first, then lexicographic on (index, exponent).
    std::strong_ordering operator<=>(const Monomial& other) const;
    bool operator==(const Monomial& other) const { return factors_ == other.factors_; }

private:
    std::vector<Factor> factors_;
    unsigned degree_ = 0;
};

struct SignedMonomial {
    int sign = 1;
    Monomial monomial;
};

/// Sorts a product of indeterminates into canonical order, accumulating -1 for
/// every transposition of two odd factors. Empty result means zero (an odd
/// factor repeats).
std::optional<SignedMonomial> normalize(std::span<const Var> sequence);

/// Product a * b in the supercommutative algebra.
std::optional<SignedMonomial> multiply(const Monomial& a, const Monomial& b);

/// Left derivative d/dX^v: move X^v to the front, then strike it. Returns the
/// integer factor (sign times multiplicity) and the remaining monomial.
std::optional<std::pair<long, Monomial>> left_derivative(const Monomial& m, Var v);

/// Pairing <X^m, P^m'> of canonical monomials in dual variables.
Scalar pair_monomials(const Monomial& x, const Monomial& p);

/// Truncated polynomial in graded indeterminates with coefficients in a value
/// space W (Scalar, Vector, ...). W must support +=, -=, *= Scalar, unary -,
/// and is_zero(W).
template <class W>
class SuperPoly {
public:
    using Terms = std::map<Monomial, W>;

    SuperPoly() = default;
    explicit SuperPoly(std::optional<unsigned> truncation) : truncation_(truncation) {}

    static SuperPoly constant(W value, std::optional<unsigned> truncation = std::nullopt) {
        SuperPoly p(truncation);
        p.add_term(Monomial{}, value);
        return p;
    }
    static SuperPoly term(const Monomial& m, W value,
                          std::optional<unsigned> truncation = std::nullopt) {
        SuperPoly p(truncation);
        p.add_term(m, value);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::optional<unsigned> truncation() const { return truncation_; }

    /// Changes the truncation cap, dropping terms above it.
    void set_truncation(std::optional<unsigned> truncation) {
        truncation_ = truncation;
        if (!truncation_) return;
        std::erase_if(terms_, [&](const auto& kv) { return kv.first.degree() > *truncation_; });
    }

    bool fits(const Monomial& m) const { return !truncation_ || m.degree() <= *truncation_; }

    void add_term(const Monomial& m, const W& value) {
        if (!fits(m) || is_zero(value)) return;
        auto [it, inserted] = terms_.try_emplace(m, value);
        if (!inserted) {
            it->second += value;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }
    void add_term(const Monomial& m, const W& value, int sign) {
        if (sign > 0) {
            add_term(m, value);
        } else {
            W neg = value;
            neg *= Scalar(-1);
            add_term(m, neg);
        }
    }

    const W* coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? nullptr : &it->second;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, w] : terms_) d = std::max(d, m.degree());
        return d;
    }

    SuperPoly& operator+=(const SuperPoly& other) {
        for (const auto& [m, w] : other.terms_) add_term(m, w);
        return *this;
    }
    SuperPoly& operator-=(const SuperPoly& other) {
        for (const auto& [m, w] : other.terms_) add_term(m, w, -1);
        return *this;
    }
    SuperPoly& operator*=(const Scalar& s) {
        if (is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, w] : terms_) w *= s;
        return *this;
    }
    friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
    friend SuperPoly operator*(SuperPoly a, const Scalar& s) { return a *= s; }
    friend SuperPoly operator*(const Scalar& s, SuperPoly a) { return a *= s; }
    SuperPoly operator-() const { return SuperPoly(*this) *= Scalar(-1); }

    /// Equality of the stored terms; truncation metadata is not compared.
    friend bool operator==(const SuperPoly& a, const SuperPoly& b) { return a.terms_ == b.terms_; }

    /// X -> -X: each term multiplied by (-1)^degree.
    SuperPoly negate_vars() const {
        SuperPoly r(truncation_);
        for (const auto& [m, w] : terms_) r.add_term(m, w, m.degree() % 2 ? -1 : 1);
        return r;
    }

    /// Graded left derivative d/dX^v.
    SuperPoly partial(Var v) const {
        SuperPoly r(truncation_);
        for (const auto& [m, w] : terms_) {
            auto d = left_derivative(m, v);
            if (!d) continue;
            W value = w;
            value *= Scalar(d->first);
            r.add_term(d->second, value);
        }
        return r;
    }

    /// Keeps only terms of degree <= d.
    SuperPoly truncated(unsigned d) const {
        SuperPoly r(truncation_ ? std::min(*truncation_, d) : d);
        for (const auto& [m, w] : terms_)
            if (m.degree() <= d) r.terms_.emplace(m, w);
        return r;
    }

    template <class F>
    auto map_values(F&& f) const {
        using U = std::decay_t<decltype(f(std::declval<const W&>()))>;
        SuperPoly<U> r(truncation_);
        for (const auto& [m, w] : terms_) r.add_term(m, f(w));
        return r;
    }

private:
    Terms terms_;
    std::optional<unsigned> truncation_;
};

inline std::optional<unsigned> min_truncation(std::optional<unsigned> a, std::optional<unsigned> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

/// Product of a scalar-valued polynomial with a W-valued one; the result is
/// truncated to the smaller of the two caps.
template <class W>
SuperPoly<W> mul(const SuperPoly<Scalar>& a, const SuperPoly<W>& b) {
    SuperPoly<W> r(min_truncation(a.truncation(), b.truncation()));
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, wb] : b.terms()) {
            if (r.truncation() && ma.degree() + mb.degree() > *r.truncation()) continue;
            auto prod = multiply(ma, mb);
            if (!prod) continue;
            W value = wb;
            value *= ca;
            r.add_term(prod->monomial, value, prod->sign);
        }
    }
    return r;
}

/// Multiplication of a polynomial by a single monomial on the right, p * m.
template <class W>
SuperPoly<W> mul_right(const SuperPoly<W>& p, const Monomial& m) {
    SuperPoly<W> r(p.truncation());
    for (const auto& [mp, w] : p.terms()) {
        if (!r.fits(mp) || (r.truncation() && mp.degree() + m.degree() > *r.truncation())) continue;
        auto prod = multiply(mp, m);
        if (!prod) continue;
        r.add_term(prod->monomial, w, prod->sign);
    }
    return r;
}

/// Pairing <f, e> between a polynomial f in the dual variables X and an
/// element e of the symmetric algebra written in the variables P (same index
/// and parity). Bilinear extension of pair_monomials.
Scalar pair(const SuperPoly<Scalar>& f, const SuperPoly<Scalar>& e);

using Poly = SuperPoly<Scalar>;

} // namespace coindiff
