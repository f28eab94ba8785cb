#pragma once

#include "coindiff/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace coindiff {

/// Polynomial in the (even) weight parameters lambda_k.
using LambdaPoly = SuperPoly<Scalar>;

LambdaPoly lambda(std::uint32_t k);

/// Sparse matrix over LambdaPoly, keyed by (row, column).
using RepMatrix = std::map<std::pair<std::uint32_t, std::uint32_t>, LambdaPoly>;

/// Finite-dimensional representation rho of h, indexed by position in
/// Decomposition::h_indices().
class HRepresentation {
public:
    enum class Kind { Character, Adjoint, Custom, Dual };

    HRepresentation(Kind kind, std::vector<Parity> parities, std::vector<RepMatrix> rho,
                    std::vector<std::string> param_names = {});

    /// One-dimensional character. Values are given per h position; missing
    /// entries are zero. Rejected (ValidationError) if it does not vanish on
    /// [h, h] or on odd elements.
    static HRepresentation character(const Decomposition& d, std::vector<LambdaPoly> values,
                                     std::vector<std::string> param_names = {});
    /// Symbolic character: an independent lambda_k on every even element of h
    /// outside [h, h] (the Cartan part for triangular decompositions).
    static HRepresentation symbolic_character(const Decomposition& d);
    /// Numeric character on the same elements as symbolic_character.
    static HRepresentation numeric_character(const Decomposition& d, const std::vector<Scalar>& weights);
    /// V = g with rho(b) = ad(b).
    static HRepresentation adjoint(const Decomposition& d);
    /// User-supplied matrices; validated.
    static HRepresentation custom(const Decomposition& d, std::vector<Parity> parities,
                                  std::vector<RepMatrix> rho);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return parities_.size(); }
    Parity parity(std::uint32_t r) const { return parities_[r]; }
    const std::vector<Parity>& parities() const { return parities_; }
    const RepMatrix& rho(std::uint32_t h_position) const { return rho_[h_position]; }
    const std::vector<std::string>& param_names() const { return params_; }

    /// Contragredient representation on V^*: rho*(b)_{sr} = -(-1)^{|b||r|} rho(b)_{rs}.
    HRepresentation dual() const;

    /// rho([a,b]) = rho(a) rho(b) - (-1)^{|a||b|} rho(b) rho(a) on all pairs.
    ValidationReport check(const Decomposition& d) const;

    /// Cartan-type elements carrying weights in symbolic/numeric characters.
    static std::vector<std::uint32_t> weight_positions(const Decomposition& d);

private:
    Kind kind_;
    std::vector<Parity> parities_;
    std::vector<RepMatrix> rho_;
    std::vector<std::string> params_;
};

/// Normal-ordered term x^I d^J (x) E_{rs}: multiplication by x^I after the
/// derivative d^J, tensored with a matrix unit of End(V).
struct OpKey {
    Monomial x;
    Monomial d;
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    auto operator<=>(const OpKey& o) const {
        if (auto c = x <=> o.x; c != 0) return c;
        if (auto c = d <=> o.d; c != 0) return c;
        if (auto c = row <=> o.row; c != 0) return c;
        return col <=> o.col;
    }
    bool operator==(const OpKey&) const = default;
};

/// Element of S (x) V (or S^* (x) V): (monomial, V index) -> coefficient.
class ModuleElement {
public:
    using Key = std::pair<Monomial, std::uint32_t>;
    const std::map<Key, LambdaPoly>& terms() const { return terms_; }
    void add(const Monomial& m, std::uint32_t r, const LambdaPoly& c, int sign = 1);
    bool empty() const { return terms_.empty(); }
    ModuleElement& operator+=(const ModuleElement& o);
    ModuleElement& operator*=(const Scalar& s);
    friend bool operator==(const ModuleElement&, const ModuleElement&) = default;

private:
    std::map<Key, LambdaPoly> terms_;
};

/// Differential operator with polynomial coefficients in variables indexed like
/// the g_- basis, valued in End(V), coefficients polynomial in lambda.
class DiffOperator {
public:
    enum class Side { Coinduced, Induced };

    DiffOperator() = default;
    DiffOperator(Side side, std::vector<Parity> var_parity, std::vector<Parity> v_parity)
        : side_(side), var_parity_(std::move(var_parity)), v_parity_(std::move(v_parity)) {}

    Side side() const { return side_; }
    const std::map<OpKey, LambdaPoly>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    const std::vector<Parity>& var_parity() const { return var_parity_; }
    const std::vector<Parity>& v_parity() const { return v_parity_; }

    void add(const OpKey& k, const LambdaPoly& c, int sign = 1);

    /// Parity of the first term; Even for the zero operator.
    Parity parity() const;
    bool homogeneous() const;
    /// Largest total derivative order.
    unsigned order() const;

    DiffOperator& operator+=(const DiffOperator& o);
    DiffOperator& operator-=(const DiffOperator& o);
    DiffOperator& operator*=(const Scalar& s);
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
    /// Composition a o b.
    friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
    friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.terms_ == b.terms_; }

    /// Action on an element; terms above max_degree (if given) are dropped.
    ModuleElement apply(const ModuleElement& e, std::optional<unsigned> max_degree = {}) const;

    Var var(std::uint32_t i) const { return {i, var_parity_[i]}; }

private:
    Side side_ = Side::Coinduced;
    std::vector<Parity> var_parity_;
    std::vector<Parity> v_parity_;
    std::map<OpKey, LambdaPoly> terms_;
};

/// a o b - (-1)^{|a||b|} b o a
DiffOperator supercommutator(const DiffOperator& a, const DiffOperator& b);

/// T(g) = sum_i phi^i(-X, g) d/dX^i + rho(h(-X, g)), d the left derivative.
DiffOperator coinduced_operator(const Decomposition& d, const GPoly& phi, const GPoly& h,
                                const HRepresentation& rep);

/// I(g) = sum_i (-1)^{(1+|g|)|P_i|} P_i phi^i(D, g) + rho(h(D, g)) with
/// X^i -> D_i = (-1)^{|X^i|} d/dP_i.
DiffOperator induced_operator(const Decomposition& d, Parity g_parity, const GPoly& phi, const GPoly& h,
                              const HRepresentation& rep);

/// All monomials in the given variables of degree <= max_degree, canonical order.
std::vector<Monomial> monomials_up_to(const std::vector<Parity>& var_parity, unsigned max_degree);

/// Pairing of S^*(x)V^* with S(x)V, composed with the antipode on S:
/// <X^K (x) v^r, P^L (x) v_s> = delta_rs (-1)^{|r||L| + e(L)} <X^K, P^L>, e(L) the
/// number of even factors of P^L.
LambdaPoly pair_elements(const ModuleElement& f, const ModuleElement& m, const std::vector<Parity>& v_parity);

struct DualityFailure {
    std::uint32_t generator;
    Monomial f_monomial;
    std::uint32_t f_index;
    Monomial m_monomial;
    std::uint32_t m_index;
    std::string lhs;
    std::string rhs;
};

/// Checks <T_{V*}(g) f, m> = -(-1)^{|g||f|} <f, I_V(g) m> for all basis g and
/// basis monomials f, m of degree <= truncation. Returns the first failure.
std::optional<DualityFailure> pair_duality_check(const Decomposition& d,
                                                 const std::vector<DiffOperator>& coinduced_dual,
                                                 const std::vector<DiffOperator>& induced,
                                                 const HRepresentation& rep, unsigned truncation,
                                                 bool flip_sign = false);

std::string to_string(const LambdaPoly& p, const std::vector<std::string>& names = {});

} // namespace coindiff
