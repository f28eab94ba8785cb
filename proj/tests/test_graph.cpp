#include "coindiff/graph.hpp"
#include "coindiff/verify.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace coindiff;

namespace {

// Independent path count: plain recursion over the edge list.
std::uint64_t count_paths(const std::vector<Edge>& edges, std::uint32_t v) {
    std::uint64_t n = 1;
    for (const auto& e : edges)
        if (e.source == v) n += count_paths(edges, e.target);
    return n;
}

std::string read(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("calibration selects a unique convention") {
    const auto sl2 = test::triangular(test::simply_laced(Family::A, 1));
    const auto a2 = test::triangular(test::simply_laced(Family::A, 2));
    const auto gl3 = test::triangular(test::gl(3));
    const Decomposition* ds[] = {&sl2, &a2, &gl3};
    const auto result = calibrate(ds);
    CHECK(result.tried.size() == 16);
    REQUIRE(result.matching.size() == 1);
    CHECK(result.matching[0] == kPathConventions);
    CHECK_FALSE(kFaceValueConventions == kPathConventions);
}

TEST_CASE("graph engine matches series on sl(2), A2, D4") {
    for (auto [f, r] : {std::pair{Family::A, 1u}, {Family::A, 2u}, {Family::D, 4u}}) {
        const auto d = test::triangular(test::simply_laced(f, r));
        const auto report = check_engine_equivalence(d);
        CAPTURE(report.subject);
        CHECK_MESSAGE(report.status == Status::Pass, report.counterexample);
    }
}

TEST_CASE("gl(1|1) graph engine matches series") {
    for (auto [m, n] : {std::pair{1u, 1u}, {2u, 1u}, {1u, 2u}, {2u, 2u}}) {
        const auto d = test::triangular(test::gl_super(m, n));
        const auto report = check_engine_equivalence(d);
        CAPTURE(report.subject);
        CHECK_MESSAGE(report.status == Status::Pass, report.counterexample);
    }
}

TEST_CASE("a mis-signed path weight is caught with the first differing coefficient") {
    const auto d = test::triangular(test::simply_laced(Family::A, 2));
    PathConventions wrong = kPathConventions;
    wrong.k_sign = -wrong.k_sign;
    const auto report = check_engine_equivalence(d, std::nullopt, wrong);
    CHECK(report.status == Status::Fail);
    CHECK(report.counterexample.find("generator") != std::string::npos);
    CHECK(report.counterexample.find("graph A") != std::string::npos);
    CHECK(check_engine_equivalence(d, std::nullopt, kFaceValueConventions).status == Status::Fail);
}

TEST_CASE("path counts agree with plain recursion") {
    for (auto alg : {test::simply_laced(Family::A, 3), test::simply_laced(Family::D, 4), test::gl(4)}) {
        const auto d = test::triangular(alg);
        const ActionGraph g(d);
        REQUIRE(g.acyclic());
        const auto counts = g.path_counts();
        for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
            const auto want = count_paths(g.edges(), v);
            CHECK(counts[v] == want);
            PathCursor cur(g, v);
            std::uint64_t n = 0;
            while (cur.next()) ++n;
            CHECK(n == want);
            CHECK(path_integral(g, v).stats.paths == want);
        }
    }
}

TEST_CASE("edges carry the adjoint structure constants of g_-") {
    const auto d = test::triangular(test::simply_laced(Family::A, 2));
    const ActionGraph g(d);
    const auto& A = d.algebra();
    std::size_t expected = 0;
    for (std::uint32_t i = 0; i < d.num_vars(); ++i)
        for (std::uint32_t s = 0; s < A.dim(); ++s) expected += A.bracket_basis(d.minus_indices()[i], s).size();
    CHECK(g.num_edges() == expected);
    for (const auto& e : g.edges())
        CHECK(A.bracket_basis(d.minus_indices()[e.label], e.source).coeff(e.target) == e.weight);
}

TEST_CASE("path coefficient range extension") {
    for (unsigned n = 0; n < 6; ++n) {
        CHECK(path_coefficient(static_cast<int>(n) + 1, n, BernoulliSign::Minus) == 0);
        CHECK(path_coefficient(-1, n, BernoulliSign::Minus) == c_coeff(0, n, BernoulliSign::Minus));
        for (unsigned k = 0; k <= n; ++k)
            CHECK(path_coefficient(static_cast<int>(k), n, BernoulliSign::Plus) == c_coeff(k, n, BernoulliSign::Plus));
    }
}

TEST_CASE("graph engine refuses non-subalgebra decompositions") {
    const auto a = test::simply_laced(Family::A, 2);
    Vector mixed = Vector::basis(a->require_index("f_01"));
    mixed.add(a->require_index("e_10"), 1);
    std::vector<std::uint32_t> h;
    for (std::uint32_t i = 0; i < a->dim(); ++i)
        if (*a->element(i).degree >= 0) h.push_back(i);
    const auto d = Decomposition::custom(
        a, {Vector::basis(a->require_index("f_10")), Vector::basis(a->require_index("f_11")), mixed}, h);
    const ActionGraph g(d);
    PathIntegralOptions opts;
    opts.truncation = 4;
    CHECK_THROWS_AS(path_integral(g, 0, opts), MisuseError);
    // the checker falls back to substitution into the defining identity
    const auto report = check_engine_equivalence(d, 6u);
    CHECK(report.status == Status::Pass);
}

TEST_CASE("cyclic graphs need a length cap") {
    // sl(2) with g_- = <f, e> and h = <h> (not a subalgebra, cyclic)
    const auto a = test::simply_laced(Family::A, 1);
    const auto d = Decomposition::custom(
        a, {Vector::basis(a->require_index("f_1")), Vector::basis(a->require_index("e_1"))}, {a->require_index("h_1")});
    const ActionGraph g(d);
    CHECK_FALSE(g.acyclic());
    REQUIRE(g.cycle().has_value());
    CHECK(g.cycle()->front() == g.cycle()->back());
    CHECK_THROWS_AS(PathCursor(g, 0), CycleError);
    PathCursor capped(g, a->require_index("h_1"), 3u);
    while (capped.next()) CHECK(capped.length() <= 3);
    CHECK(capped.truncated());
}

TEST_CASE("parallel path integrals are identical for any worker count") {
    const auto d = test::triangular(test::simply_laced(Family::D, 4));
    const ActionGraph g(d);
    std::vector<std::uint32_t> all(d.algebra().dim());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto one = path_integrals(g, all, {}, 1);
    const auto four = path_integrals(g, all, {}, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].a == four[i].a);
        CHECK(one[i].b == four[i].b);
        CHECK(one[i].stats.paths == four[i].stats.paths);
    }
    CHECK(format_statistics(compute_statistics(d, 1)) == format_statistics(compute_statistics(d, 3)));
}

TEST_CASE("sl(2) statistics match the stored baseline") {
    const auto d = test::triangular(test::simply_laced(Family::A, 1));
    CHECK(format_statistics(compute_statistics(d, 1)) == read(COINDIFF_TEST_DATA "/sl2_stats.txt"));
}
