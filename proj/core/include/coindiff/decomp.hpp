#pragma once

#include "coindiff/liealg.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace coindiff {

class DecompositionError : public std::runtime_error {
public:
    enum class Kind { MissingGrading, NotDirect, NotSpanning, HNotClosed, Inhomogeneous };
    DecompositionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Direct-sum decomposition g = g_- (+) h with h a subalgebra.
///
/// All engines work in an adapted basis in which g_- is spanned by basis
/// elements. For decompositions given by basis indices the adapted algebra is
/// the original one; for g_- given by arbitrary spanning vectors the algebra is
/// re-expressed in the basis (g_- vectors, h basis elements).
///
/// The i-th element of minus_indices() is the vector P_i, dual to the
/// indeterminate X^i.
class Decomposition {
public:
    /// g_- = negative-degree part, h = non-negative part.
    static Decomposition triangular(std::shared_ptr<const LieSuperAlgebra> alg);

    /// g_- spanned by the given vectors (original coordinates), h by the given
    /// basis elements.
    static Decomposition custom(std::shared_ptr<const LieSuperAlgebra> alg,
                                const std::vector<Vector>& minus_vectors,
                                const std::vector<std::uint32_t>& h_indices);

    const LieSuperAlgebra& algebra() const { return *adapted_; }
    const LieSuperAlgebra& original() const { return *original_; }
    std::shared_ptr<const LieSuperAlgebra> algebra_ptr() const { return adapted_; }
    bool adapted_is_original() const { return adapted_ == original_; }

    const std::vector<std::uint32_t>& minus_indices() const { return minus_; }
    const std::vector<std::uint32_t>& h_indices() const { return h_; }
    std::size_t num_vars() const { return minus_.size(); }

    bool in_minus(std::uint32_t i) const { return var_of_[i] >= 0; }
    bool in_h(std::uint32_t i) const { return var_of_[i] < 0; }
    /// Position of a basis element of g_- in minus_indices().
    std::optional<std::uint32_t> var_of(std::uint32_t basis_index) const;
    /// The indeterminate X^i dual to P_i.
    Var var(std::uint32_t i) const { return {i, adapted_->parity(minus_[i])}; }
    /// Position of a basis element of h in h_indices().
    std::optional<std::uint32_t> h_position(std::uint32_t basis_index) const;

    bool is_subalgebra() const { return minus_is_subalgebra_; }
    /// Grading depth l when the adapted algebra is graded.
    std::optional<int> depth() const;
    bool is_triangular() const { return triangular_; }

    Vector project_minus(const Vector& v) const;
    Vector project_h(const Vector& v) const;
    SuperPoly<Vector> project_minus(const SuperPoly<Vector>& p) const;
    SuperPoly<Vector> project_h(const SuperPoly<Vector>& p) const;

    /// Coordinates change between original and adapted bases.
    Vector to_adapted(const Vector& original_coords) const;
    Vector to_original(const Vector& adapted_coords) const;

private:
    Decomposition() = default;
    void index(std::vector<std::uint32_t> minus, std::vector<std::uint32_t> h);
    void check_closure();

    std::shared_ptr<const LieSuperAlgebra> original_;
    std::shared_ptr<const LieSuperAlgebra> adapted_;
    std::vector<std::uint32_t> minus_;
    std::vector<std::uint32_t> h_;
    std::vector<int> var_of_;
    std::vector<int> h_pos_;
    bool minus_is_subalgebra_ = false;
    bool triangular_ = false;
    // columns: adapted basis vectors in original coordinates, and the inverse
    std::vector<Vector> to_original_;
    std::vector<Vector> to_adapted_;
};

/// Rank of a set of vectors over Q (exact Gaussian elimination).
std::size_t rank(const std::vector<Vector>& vectors, std::size_t dim);

} // namespace coindiff
