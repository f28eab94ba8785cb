#include "coindiff/superpoly.hpp"

#include <algorithm>

namespace coindiff {

const char* to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

Monomial Monomial::of(Var v, std::uint32_t exp) {
    Monomial m;
    if (exp == 0) return m;
    m.factors_.push_back({v.index, exp, v.parity});
    m.degree_ = exp;
    return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
    Monomial m;
    m.factors_ = std::move(factors);
    for (const auto& f : m.factors_) m.degree_ += f.exp;
    return m;
}

Parity Monomial::parity() const {
    Parity p = Parity::Even;
    for (const auto& f : factors_)
        if (is_odd(f.parity) && f.exp % 2) p = p + Parity::Odd;
    return p;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
    for (const auto& f : factors_)
        if (f.var == var) return f.exp;
    return 0;
}

std::size_t Monomial::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& f : factors_) {
        h ^= (static_cast<std::size_t>(f.var) << 20 ^ f.exp) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
    if (auto c = degree_ <=> other.degree_; c != 0) return c;
    const auto n = std::min(factors_.size(), other.factors_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = factors_[i];
        const auto& b = other.factors_[i];
        // lex order with X^1 > X^2 > ...: lex-larger monomials sort first
        if (a.var != b.var) return a.var <=> b.var;
        if (a.exp != b.exp) return b.exp <=> a.exp;
    }
    return other.factors_.size() <=> factors_.size();
}

std::optional<SignedMonomial> normalize(std::span<const Var> sequence) {
    // count inversions among odd factors; reject repeated odd factors
    int sign = 1;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (!is_odd(sequence[i].parity)) continue;
        for (std::size_t j = i + 1; j < sequence.size(); ++j) {
            if (!is_odd(sequence[j].parity)) continue;
            if (sequence[i].index == sequence[j].index) return std::nullopt;
            if (sequence[i].index > sequence[j].index) sign = -sign;
        }
    }
    std::vector<Var> sorted(sequence.begin(), sequence.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Var& a, const Var& b) { return a.index < b.index; });
    std::vector<Monomial::Factor> factors;
    for (const auto& v : sorted) {
        if (!factors.empty() && factors.back().var == v.index)
            ++factors.back().exp;
        else
            factors.push_back({v.index, 1, v.parity});
    }
    return SignedMonomial{sign, Monomial::from_factors(std::move(factors))};
}

std::optional<SignedMonomial> multiply(const Monomial& a, const Monomial& b) {
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::vector<Monomial::Factor> out;
    out.reserve(fa.size() + fb.size());
    // sign: each odd factor of b moves left past the odd factors of a with a
    // larger index
    int sign = 1;
    int odd_a_remaining = 0;
    for (const auto& f : fa)
        if (is_odd(f.parity)) ++odd_a_remaining;
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].var < fb[j].var)) {
            if (is_odd(fa[i].parity)) --odd_a_remaining;
            out.push_back(fa[i++]);
        } else if (i == fa.size() || fb[j].var < fa[i].var) {
            if (is_odd(fb[j].parity) && odd_a_remaining % 2) sign = -sign;
            out.push_back(fb[j++]);
        } else {
            if (is_odd(fa[i].parity)) return std::nullopt;
            out.push_back({fa[i].var, fa[i].exp + fb[j].exp, fa[i].parity});
            ++i;
            ++j;
        }
    }
    return SignedMonomial{sign, Monomial::from_factors(std::move(out))};
}

std::optional<std::pair<long, Monomial>> left_derivative(const Monomial& m, Var v) {
    const auto& fs = m.factors();
    long coeff = 1;
    std::vector<Monomial::Factor> out;
    out.reserve(fs.size());
    bool found = false;
    int odd_before = 0;
    for (const auto& f : fs) {
        if (f.var == v.index) {
            found = true;
            coeff = f.exp;
            if (is_odd(f.parity) && odd_before % 2) coeff = -coeff;
            if (f.exp > 1) out.push_back({f.var, f.exp - 1, f.parity});
        } else {
            if (!found && is_odd(f.parity)) ++odd_before;
            out.push_back(f);
        }
    }
    if (!found) return std::nullopt;
    return std::make_pair(coeff, Monomial::from_factors(std::move(out)));
}

Scalar pair_monomials(const Monomial& x, const Monomial& p) {
    if (!(x == p)) return Scalar(0);
    // Each even index contributes exp! matchings; the odd factors pair in
    // reversed order, giving the sign of the reversal of r elements.
    Integer weight = 1;
    unsigned odd = 0;
    for (const auto& f : x.factors()) {
        if (is_odd(f.parity))
            ++odd;
        else
            weight *= factorial(f.exp);
    }
    Scalar r(weight);
    if (odd > 1 && (odd * (odd - 1) / 2) % 2) r = -r;
    return r;
}

Scalar pair(const SuperPoly<Scalar>& f, const SuperPoly<Scalar>& e) {
    Scalar acc = 0;
    for (const auto& [m, c] : f.terms()) {
        if (const Scalar* d = e.coefficient(m)) acc += c * *d * pair_monomials(m, m);
    }
    return acc;
}

} // namespace coindiff
