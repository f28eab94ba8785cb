#include "coindiff/decomp.hpp"

#include <algorithm>
#include <numeric>

namespace coindiff {

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix dense(const std::vector<Vector>& columns, std::size_t dim) {
    Matrix m(dim, std::vector<Scalar>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, x] : columns[c].entries()) m[r][c] = x;
    return m;
}

// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(Matrix a) {
    const auto n = a.size();
    Matrix inv(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && is_zero(a[pivot][col])) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Scalar p = a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(a[r][col])) continue;
            const Scalar f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

Vector apply_columns(const std::vector<Vector>& columns, const Vector& v) {
    Vector r;
    for (const auto& [i, c] : v.entries()) r.add_scaled(columns[i], c);
    return r;
}

} // namespace

std::size_t rank(const std::vector<Vector>& vectors, std::size_t dim) {
    Matrix m = dense(vectors, dim);
    std::size_t r = 0;
    const std::size_t cols = vectors.size();
    for (std::size_t c = 0; c < cols && r < dim; ++c) {
        std::size_t p = r;
        while (p < dim && is_zero(m[p][c])) ++p;
        if (p == dim) continue;
        std::swap(m[p], m[r]);
        for (std::size_t q = r + 1; q < dim; ++q) {
            if (is_zero(m[q][c])) continue;
            const Scalar f = m[q][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[q][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

void Decomposition::index(std::vector<std::uint32_t> minus, std::vector<std::uint32_t> h) {
    minus_ = std::move(minus);
    h_ = std::move(h);
    var_of_.assign(adapted_->dim(), -1);
    h_pos_.assign(adapted_->dim(), -1);
    for (std::size_t i = 0; i < minus_.size(); ++i) var_of_[minus_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < h_.size(); ++i) h_pos_[h_[i]] = static_cast<int>(i);
}

void Decomposition::check_closure() {
    const auto& alg = *adapted_;
    for (auto a : h_) {
        for (auto b : h_) {
            const Vector& v = alg.bracket_basis(a, b);
            for (const auto& [k, c] : v.entries()) {
                if (in_minus(k))
                    throw DecompositionError(DecompositionError::Kind::HNotClosed,
                                             "h is not closed: [" + alg.element(a).label + ", " +
                                                 alg.element(b).label + "] = " + alg.format(v));
            }
        }
    }
    minus_is_subalgebra_ = true;
    for (auto a : minus_) {
        for (auto b : minus_) {
            for (const auto& [k, c] : alg.bracket_basis(a, b).entries()) {
                if (in_h(k)) {
                    minus_is_subalgebra_ = false;
                    return;
                }
            }
        }
    }
}

Decomposition Decomposition::triangular(std::shared_ptr<const LieSuperAlgebra> alg) {
    if (!alg->graded())
        throw DecompositionError(DecompositionError::Kind::MissingGrading,
                                 "triangular decomposition needs a Z-graded algebra: " + alg->name());
    Decomposition d;
    d.original_ = alg;
    d.adapted_ = alg;
    std::vector<std::uint32_t> minus, h;
    for (std::uint32_t i = 0; i < alg->dim(); ++i) (*alg->element(i).degree < 0 ? minus : h).push_back(i);
    d.index(std::move(minus), std::move(h));
    d.triangular_ = true;
    d.check_closure();
    return d;
}

Decomposition Decomposition::custom(std::shared_ptr<const LieSuperAlgebra> alg,
                                    const std::vector<Vector>& minus_vectors,
                                    const std::vector<std::uint32_t>& h_indices) {
    const auto n = alg->dim();
    std::vector<Vector> columns = minus_vectors;
    for (auto i : h_indices) {
        if (i >= n) throw std::out_of_range("h index out of range");
        columns.push_back(Vector::basis(i));
    }
    const auto r = rank(columns, n);
    if (r < columns.size())
        throw DecompositionError(DecompositionError::Kind::NotDirect,
                                 "g_- and h do not form a direct sum (dependent spanning set)");
    if (r < n)
        throw DecompositionError(DecompositionError::Kind::NotSpanning,
                                 "g_- + h does not span g (rank " + std::to_string(r) + " < " +
                                     std::to_string(n) + ")");

    Decomposition d;
    d.original_ = alg;

    const bool aligned = std::all_of(minus_vectors.begin(), minus_vectors.end(), [](const Vector& v) {
        return v.size() == 1 && v.entries()[0].second == 1;
    });
    if (aligned) {
        d.adapted_ = alg;
        std::vector<std::uint32_t> minus;
        for (const auto& v : minus_vectors) minus.push_back(v.entries()[0].first);
        d.index(std::move(minus), h_indices);
        d.check_closure();
        return d;
    }

    // adapted basis: g_- vectors followed by the h basis elements
    std::vector<BasisElement> basis;
    bool graded = alg->graded();
    for (const auto& v : minus_vectors) {
        const Parity p = alg->parity(v.entries()[0].first);
        std::optional<int> degree = alg->element(v.entries()[0].first).degree;
        for (const auto& [k, c] : v.entries()) {
            if (alg->parity(k) != p)
                throw DecompositionError(DecompositionError::Kind::Inhomogeneous,
                                         "g_- vector " + alg->format(v) + " is not parity-homogeneous");
            if (alg->element(k).degree != degree) degree.reset();
        }
        if (!degree) graded = false;
        std::string label;
        if (v.size() == 1 && v.entries()[0].second == 1) {
            label = alg->element(v.entries()[0].first).label;
        } else {
            label = alg->format(v);
            std::erase(label, ' ');
        }
        basis.push_back({label, p, degree});
    }
    for (auto i : h_indices) basis.push_back(alg->element(i));
    if (!graded)
        for (auto& b : basis) b.degree.reset();

    auto inv = inverse(dense(columns, n));
    // rank check above guarantees invertibility
    d.to_original_ = columns;
    d.to_adapted_.assign(n, Vector{});
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r2 = 0; r2 < n; ++r2)
            if (!is_zero((*inv)[r2][c])) d.to_adapted_[c].add(static_cast<std::uint32_t>(r2), (*inv)[r2][c]);

    std::vector<BracketEntry> entries;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i; j < n; ++j) {
            Vector v = apply_columns(d.to_adapted_, alg->bracket(columns[i], columns[j]));
            if (!v.empty()) entries.push_back(BracketEntry{i, j, std::move(v)});
        }
    }
    d.adapted_ = std::make_shared<LieSuperAlgebra>(alg->name() + "'", std::move(basis), entries);
    std::vector<std::uint32_t> minus(minus_vectors.size()), h(h_indices.size());
    std::iota(minus.begin(), minus.end(), 0u);
    std::iota(h.begin(), h.end(), static_cast<std::uint32_t>(minus_vectors.size()));
    d.index(std::move(minus), std::move(h));
    d.check_closure();
    return d;
}

std::optional<std::uint32_t> Decomposition::var_of(std::uint32_t basis_index) const {
    if (var_of_[basis_index] < 0) return std::nullopt;
    return static_cast<std::uint32_t>(var_of_[basis_index]);
}

std::optional<std::uint32_t> Decomposition::h_position(std::uint32_t basis_index) const {
    if (h_pos_[basis_index] < 0) return std::nullopt;
    return static_cast<std::uint32_t>(h_pos_[basis_index]);
}

std::optional<int> Decomposition::depth() const {
    if (!adapted_->graded()) return std::nullopt;
    return adapted_->depth();
}

Vector Decomposition::project_minus(const Vector& v) const {
    return v.filtered([this](std::uint32_t i) { return in_minus(i); });
}

Vector Decomposition::project_h(const Vector& v) const {
    return v.filtered([this](std::uint32_t i) { return in_h(i); });
}

SuperPoly<Vector> Decomposition::project_minus(const SuperPoly<Vector>& p) const {
    return p.map_values([this](const Vector& v) { return project_minus(v); });
}

SuperPoly<Vector> Decomposition::project_h(const SuperPoly<Vector>& p) const {
    return p.map_values([this](const Vector& v) { return project_h(v); });
}

Vector Decomposition::to_adapted(const Vector& original_coords) const {
    if (adapted_is_original()) return original_coords;
    return apply_columns(to_adapted_, original_coords);
}

Vector Decomposition::to_original(const Vector& adapted_coords) const {
    if (adapted_is_original()) return adapted_coords;
    return apply_columns(to_original_, adapted_coords);
}

} // namespace coindiff
