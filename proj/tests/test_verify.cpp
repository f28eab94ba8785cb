#include "coindiff/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include "support.hpp"

using namespace coindiff;

TEST_CASE("engine equivalence and homomorphism reports on A2") {
    const auto d = test::triangular(test::simply_laced(Family::A, 2));
    const auto eq = check_engine_equivalence(d);
    CHECK(eq.status == Status::Pass);
    CHECK(eq.counterexample.empty());
    const auto sym = HRepresentation::symbolic_character(d);
    CHECK(check_homomorphism(d, sym, Realization::Coinduced).status == Status::Pass);
    CHECK(check_homomorphism(d, sym, Realization::Induced).status == Status::Pass);
    CHECK(check_homomorphism(d, HRepresentation::adjoint(d), Realization::Induced, 4u).status == Status::Pass);
}

TEST_CASE("face-value path conventions fail engine equivalence with a counterexample") {
    const auto d = test::triangular(test::simply_laced(Family::A, 1));
    const auto r = check_engine_equivalence(d, {}, kFaceValueConventions);
    CHECK(r.status == Status::Fail);
    CHECK_FALSE(r.counterexample.empty());
}

TEST_CASE("degree bound") {
    const auto a2 = test::triangular(test::simply_laced(Family::A, 2));
    CHECK(check_degree_bound(a2).status == Status::Pass);
    // sl(3): l = 2, so generators of degree 1 reach at most 3
    CHECK(check_degree_bound(a2, 1, 3u).status == Status::Pass);
    CHECK(check_degree_bound(a2, 1, 4u).status == Status::Fail);

    std::vector<BasisElement> basis{{"x", Parity::Even, -1}, {"y", Parity::Even, 0}};
    const auto abelian = Decomposition::triangular(
        std::make_shared<const LieSuperAlgebra>("abelian", basis, std::vector<BracketEntry>{}));
    CHECK(check_degree_bound(abelian).status == Status::Pass);

    const auto gl3 = test::triangular(test::gl(3));
    CHECK(check_degree_bound(gl3).status == Status::Pass);
}

TEST_CASE("statistics expectations: hard degree, soft counts") {
    const auto d = test::triangular(test::simply_laced(Family::A, 2));
    const auto s = compute_statistics(d);
    CHECK(s.per_generator.size() == 2);
    CHECK(check_statistics(s, {s.max.paths, s.max.terms, s.max.max_degree}).status == Status::Pass);

    const auto soft = check_statistics(s, {s.max.paths + 1, {}, s.max.max_degree});
    CHECK(soft.status == Status::Warn);
    CHECK(soft.ok());
    StatsExpectation strict{s.max.paths + 1, {}, s.max.max_degree};
    strict.soft_counts_warn = false;
    CHECK(check_statistics(s, strict).status == Status::Fail);

    const auto hard = check_statistics(s, {{}, {}, s.max.max_degree + 1});
    CHECK(hard.status == Status::Fail);
    CHECK_FALSE(hard.ok());
}

TEST_CASE("statistics are independent of the worker count") {
    const auto d = test::triangular(test::simply_laced(Family::D, 4));
    CHECK(format_statistics(compute_statistics(d, 1)) == format_statistics(compute_statistics(d, 4)));
}

TEST_CASE("report rendering") {
    std::vector<Report> rs{{"homomorphism", "sl(2)", Status::Pass, "", {"coinduced"}, 0.5},
                           {"duality", "gl(3)", Status::Fail, "g = e_1", {}, 0.25}};
    const auto text = to_text(rs, false);
    CHECK(text.find("[pass] homomorphism (sl(2))") != std::string::npos);
    CHECK(text.find("[fail] duality (gl(3))") != std::string::npos);
    CHECK(text.find("g = e_1") != std::string::npos);
    CHECK(to_text(rs, false) == to_text(rs, false));

    const auto j = nlohmann::json::parse(to_json(rs, false));
    REQUIRE(j["reports"].size() == 2);
    CHECK(j["reports"][0]["status"] == "pass");
    CHECK(j["reports"][1]["counterexample"] == "g = e_1");
    CHECK_FALSE(j["reports"][0].contains("seconds"));
    CHECK(nlohmann::json::parse(to_json(rs))["reports"][0].contains("seconds"));
}

TEST_CASE("duality check detects a flipped sign") {
    const auto d = test::triangular(test::gl(3));
    const auto sym = HRepresentation::symbolic_character(d);
    CHECK(check_duality(d, sym, 4).status == Status::Pass);
    const auto bad = check_duality(d, sym, 4, true);
    CHECK(bad.status == Status::Fail);
    CHECK_FALSE(bad.counterexample.empty());
}

TEST_CASE("generators of degree") {
    const auto d = test::triangular(test::simply_laced(Family::A, 2));
    CHECK(generators_of_degree(d, 1).size() == 2);
    CHECK(generators_of_degree(d, 2).size() == 1);
    CHECK(generators_of_degree(d, 0).size() == 2);
    CHECK(generators_of_degree(d, -2).size() == 1);
    CHECK(generators_of_degree(d, 3).empty());
}
