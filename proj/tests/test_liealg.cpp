#include "coindiff/io.hpp"
#include "coindiff/liealg.hpp"

#include <doctest.h>

#include <map>

#include "support.hpp"

using namespace coindiff;

namespace {

std::vector<BracketEntry> entries_of(const LieSuperAlgebra& alg) { return alg.canonical_brackets(); }

LieSuperAlgebra with_entry(const LieSuperAlgebra& alg, std::uint32_t i, std::uint32_t j, const Vector& delta) {
    auto entries = entries_of(alg);
    bool found = false;
    for (auto& e : entries)
        if (e.left == i && e.right == j) {
            e.value += delta;
            found = true;
        }
    if (!found) entries.push_back({i, j, delta});
    return LieSuperAlgebra(alg.name() + "'", alg.basis(), entries);
}

} // namespace

TEST_CASE("Chevalley constructors validate") {
    struct Case {
        Family f;
        unsigned rank;
        std::size_t dim, positive;
        int height;
    };
    // dimensions, positive-root counts and highest-root heights (Coxeter number - 1)
    for (const auto& c : {Case{Family::A, 1, 3, 1, 1}, Case{Family::A, 2, 8, 3, 2}, Case{Family::A, 4, 24, 10, 4},
                          Case{Family::D, 4, 28, 12, 5}, Case{Family::D, 5, 45, 20, 7},
                          Case{Family::E, 6, 78, 36, 11}}) {
        CAPTURE(to_char(c.f));
        CAPTURE(c.rank);
        const auto alg = build_simply_laced(c.f, c.rank);
        CHECK(alg.dim() == c.dim);
        CHECK(positive_roots(c.f, c.rank).size() == c.positive);
        CHECK(alg.max_degree() == c.height);
        CHECK(alg.depth() == c.height);
        const auto report = validate(alg);
        CHECK_MESSAGE(report.ok(), report.summary());
    }
}

TEST_CASE("Chevalley basis relations on D4") {
    const auto alg = build_simply_laced(Family::D, 4);
    const auto roots = positive_roots(Family::D, 4);
    const auto cartan = cartan_matrix(Family::D, 4);
    auto label = [](char k, const std::vector<int>& r) {
        std::string s(1, k);
        s += "_";
        for (int x : r) s += std::to_string(x);
        return s;
    };
    for (const auto& r : roots) {
        const auto e = alg.require_index(label('e', r)), f = alg.require_index(label('f', r));
        // [h_i, e_a] = <a, alpha_i^vee> e_a
        for (unsigned i = 0; i < 4; ++i) {
            const auto h = alg.require_index("h_" + std::to_string(i + 1));
            int pairing = 0;
            for (unsigned j = 0; j < 4; ++j) pairing += r[j] * cartan[j][i];
            CHECK(alg.bracket_basis(h, e) == Vector::basis(e, pairing));
            CHECK(alg.bracket_basis(h, f) == Vector::basis(f, -pairing));
        }
        // [e_a, f_a] is the coroot sum_i a_i h_i (simply laced)
        Vector coroot;
        for (unsigned i = 0; i < 4; ++i)
            if (r[i]) coroot.add(alg.require_index("h_" + std::to_string(i + 1)), r[i]);
        CHECK(alg.bracket_basis(e, f) == coroot);
    }
    // N_{a,b} = +-1 whenever a + b is a root
    for (std::uint32_t i = 0; i < alg.dim(); ++i)
        for (std::uint32_t j = 0; j < alg.dim(); ++j) {
            const auto& v = alg.bracket_basis(i, j);
            if (alg.element(i).label[0] == 'e' && alg.element(j).label[0] == 'e')
                for (const auto& [k, c] : v.entries()) CHECK(abs(c) == 1);
        }
}

TEST_CASE("gl(n) structure") {
    const auto alg = build_gl(3);
    CHECK(alg.dim() == 9);
    CHECK(validate(alg).ok());
    const auto e12 = alg.require_index("E_12"), e21 = alg.require_index("E_21");
    const auto e11 = alg.require_index("E_11"), e22 = alg.require_index("E_22");
    Vector h;
    h.add(e11, 1);
    h.add(e22, -1);
    CHECK(alg.bracket_basis(e12, e21) == h);
    CHECK(alg.depth() == 2);
    CHECK(build_gl(10).element(0).label.find(',') != std::string::npos);
}

TEST_CASE("perturbing a gl(2) structure constant is caught") {
    const auto alg = build_gl(2);
    const auto e12 = alg.require_index("E_12"), e11 = alg.require_index("E_11");
    // [E_11, E_12] = 2 E_12 breaks Jacobi on (E_11, E_12, E_21)
    const auto broken = e11 < e12 ? with_entry(alg, e11, e12, Vector::basis(e12, 1))
                                  : with_entry(alg, e12, e11, Vector::basis(e12, -1));
    const auto report = validate(broken);
    REQUIRE_FALSE(report.ok());
    bool jacobi = false;
    for (const auto& v : report.violations) jacobi |= v.kind == Violation::Kind::Jacobi;
    CHECK(jacobi);
    CHECK_THROWS_AS(validated(broken), ValidationError);
}

TEST_CASE("superalgebra axioms: gl(1|1) custom file and gl(m|n)") {
    const auto gl11 = load_custom(COINDIFF_TEST_DATA "/gl11.lsa");
    CHECK(gl11.dim() == 4);
    CHECK(validate(gl11).ok());
    // odd-odd bracket is symmetric: [E_12, E_21] = [E_21, E_12] = E_11 + E_22
    const auto a = gl11.require_index("E_12"), b = gl11.require_index("E_21");
    CHECK(gl11.bracket_basis(a, b) == gl11.bracket_basis(b, a));
    CHECK(validate(*test::gl_super(2, 2)).ok());
    CHECK(validate(*test::gl_super(3, 1)).ok());
}

TEST_CASE("parity and grading violations are reported") {
    std::vector<BasisElement> basis{{"x", Parity::Odd, 1}, {"y", Parity::Odd, -1}, {"z", Parity::Odd, 0}};
    // [x, y] must be even; z is odd
    const LieSuperAlgebra bad("bad", basis, {{0, 1, Vector::basis(2)}});
    const auto report = validate(bad);
    REQUIRE_FALSE(report.ok());
    bool parity = false;
    for (const auto& v : report.violations) parity |= v.kind == Violation::Kind::Parity;
    CHECK(parity);

    std::vector<BasisElement> graded{{"a", Parity::Even, 1}, {"b", Parity::Even, 1}, {"c", Parity::Even, 1}};
    const LieSuperAlgebra off("off", graded, {{0, 1, Vector::basis(2)}});
    bool grading = false;
    for (const auto& v : validate(off).violations) grading |= v.kind == Violation::Kind::Grading;
    CHECK(grading);
}

TEST_CASE("invalid ranks are rejected") {
    CHECK_THROWS_AS(build_simply_laced(Family::E, 5), std::domain_error);
    CHECK_THROWS_AS(build_simply_laced(Family::D, 2), std::domain_error);
    CHECK_THROWS_AS(build_simply_laced(Family::A, 0), std::domain_error);
    CHECK_THROWS_AS(parse_family('B'), std::domain_error);
}
