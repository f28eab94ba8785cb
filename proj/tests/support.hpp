#pragma once

#include "coindiff/decomp.hpp"
#include "coindiff/liealg.hpp"

#include <memory>
#include <string>

namespace coindiff::test {

inline std::shared_ptr<const LieSuperAlgebra> simply_laced(Family f, unsigned rank) {
    return std::make_shared<const LieSuperAlgebra>(build_simply_laced(f, rank));
}

inline std::shared_ptr<const LieSuperAlgebra> gl(unsigned n) {
    return std::make_shared<const LieSuperAlgebra>(build_gl(n));
}

/// gl(m|n) in matrix units E_ab (1-based), graded by b - a; E_ab is odd when
/// exactly one of a, b exceeds m.
inline std::shared_ptr<const LieSuperAlgebra> gl_super(unsigned m, unsigned n) {
    const unsigned N = m + n;
    auto odd_index = [&](unsigned a) { return a >= m; };
    std::vector<BasisElement> basis;
    for (unsigned a = 0; a < N; ++a)
        for (unsigned b = 0; b < N; ++b)
            basis.push_back({"E_" + std::to_string(a + 1) + std::to_string(b + 1),
                             odd_index(a) != odd_index(b) ? Parity::Odd : Parity::Even,
                             static_cast<int>(b) - static_cast<int>(a)});
    std::vector<BracketEntry> brackets;
    for (unsigned i = 0; i < N * N; ++i)
        for (unsigned j = i; j < N * N; ++j) {
            const unsigned a = i / N, b = i % N, c = j / N, d = j % N;
            Vector v;
            // [E_ab, E_cd] = delta_bc E_ad - (-1)^{|ab||cd|} delta_da E_cb
            if (b == c) v.add(a * N + d, Scalar(1));
            const bool both_odd = is_odd(basis[i].parity) && is_odd(basis[j].parity);
            if (d == a) v.add(c * N + b, Scalar(both_odd ? 1 : -1));
            if (!v.empty()) brackets.push_back({i, j, v});
        }
    return std::make_shared<const LieSuperAlgebra>(validated(
        LieSuperAlgebra("gl(" + std::to_string(m) + "|" + std::to_string(n) + ")", basis, brackets)));
}

inline Decomposition triangular(std::shared_ptr<const LieSuperAlgebra> alg) {
    return Decomposition::triangular(std::move(alg));
}

/// sl(3) with g_- = <f_10, f_11, f_01 + e_10> and h the Borel: g_- is not a
/// subalgebra.
inline Decomposition sl3_non_subalgebra() {
    const auto a = simply_laced(Family::A, 2);
    Vector mixed = Vector::basis(a->require_index("f_01"));
    mixed.add(a->require_index("e_10"), 1);
    std::vector<std::uint32_t> h;
    for (std::uint32_t i = 0; i < a->dim(); ++i)
        if (*a->element(i).degree >= 0) h.push_back(i);
    return Decomposition::custom(
        a, {Vector::basis(a->require_index("f_10")), Vector::basis(a->require_index("f_11")), mixed}, h);
}

} // namespace coindiff::test
