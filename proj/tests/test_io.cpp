#include "coindiff/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "support.hpp"

using namespace coindiff;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / ("coindiff_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

OperatorSet operator_set(const Decomposition& d, const HRepresentation& rep, DiffOperator::Side side) {
    OperatorSet set;
    set.side = side;
    for (auto i : d.minus_indices()) {
        set.variables.push_back(d.algebra().element(i).label);
        set.var_parity.push_back(d.algebra().parity(i));
    }
    set.v_parity = rep.parities();
    set.params = rep.param_names();
    for (std::uint32_t g = 0; g < d.algebra().dim(); ++g) {
        auto s = phi_h_subalgebra(d, Vector::basis(g), 6);
        set.operators.push_back(
            {d.algebra().element(g).label, side == DiffOperator::Side::Coinduced
                                               ? coinduced_operator(d, s.phi, s.h, rep)
                                               : induced_operator(d, d.algebra().parity(g), s.phi, s.h, rep)});
    }
    return set;
}

std::size_t error_line(const std::string& text) {
    try {
        parse_structure(text);
    } catch (const FormatError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("structure text round-trips byte-exactly") {
    for (auto alg : {test::simply_laced(Family::E, 6), test::gl(3), test::gl_super(2, 1)}) {
        CAPTURE(alg->name());
        const auto text = write_structure(*alg);
        const auto back = parse_structure(text);
        CHECK(write_structure(back) == text);
        CHECK(validate(back).ok());
        CHECK(back.dim() == alg->dim());
        for (std::uint32_t i = 0; i < alg->dim(); ++i)
            for (std::uint32_t j = 0; j < alg->dim(); ++j) CHECK(back.bracket_basis(i, j) == alg->bracket_basis(i, j));
    }
}

TEST_CASE("structure format errors carry line numbers") {
    CHECK(error_line("coindiff-structure 2\nname x\nbasis 0\n") == 1);
    CHECK(error_line("coindiff-structure 1\nname x\nbasis 1\nu maybe 0\n") == 4);
    CHECK(error_line("coindiff-structure 1\nname x\nbasis 1\nu even 0\nbracket u v 1 u\n") == 5);
    CHECK(error_line("coindiff-structure 1\nname x\nbasis 1\nu even 1/0\n") == 4);
    CHECK(error_line("coindiff-structure 1\n# comment\nname x\nbasis 2\nu even 0\nu odd 0\n") == 6);
    CHECK(error_line("coindiff-structure 1\nname x\nbasis 1\nu even 0\nbracket u u 1/0 u\n") == 5);
    CHECK_THROWS_AS(load_custom(COINDIFF_TEST_DATA "/broken_antisymmetry.lsa"), ValidationError);
    CHECK_THROWS(load_custom(COINDIFF_TEST_DATA "/does_not_exist.lsa"));
}

TEST_CASE("representation files") {
    const auto d = test::triangular(test::simply_laced(Family::A, 1));
    const auto rep = load_representation(COINDIFF_TEST_DATA "/sl2_fundamental.rep", d);
    CHECK(rep.dim() == 2);
    CHECK_THROWS_AS(parse_representation("coindiff-representation 1\ndim 1\nparity even\nrho f_1 0 0 1\n", d),
                    FormatError);
    CHECK_THROWS_AS(parse_representation("coindiff-representation 1\ndim 1\nparity even\nrho h_1 0 1 1\n", d),
                    FormatError);
    // a character that is nonzero on e_1 is not a representation of h
    CHECK_THROWS_AS(parse_representation("coindiff-representation 1\ndim 1\nparity even\nrho e_1 0 0 1\n", d),
                    ValidationError);
}

TEST_CASE("structure cache: miss, hit, corrupt entry, versioned key") {
    const auto dir = scratch_dir("cache");
    StructureCache cache(dir);
    CHECK(cache_key(Family::E, 6) == "E6");
    const auto path = cache.entry_path("E6");
    CHECK(path.filename().string().find(".v" + std::to_string(kStructureFormatVersion) + ".") != std::string::npos);

    int builds = 0;
    auto build = [&] {
        ++builds;
        return build_simply_laced(Family::D, 4);
    };
    const auto first = cache.load_or_build("D4", build);
    CHECK_FALSE(cache.last_was_hit());
    const auto second = cache.load_or_build("D4", build);
    CHECK(cache.last_was_hit());
    CHECK(builds == 1);
    CHECK(write_structure(first) == write_structure(second));

    {
        std::ofstream(cache.entry_path("D4")) << "coindiff-structure 1\nname D4\nbasis 3\nx even 0\n";
    }
    std::vector<std::string> warnings;
    const auto third = cache.load_or_build("D4", build, &warnings);
    CHECK_FALSE(cache.last_was_hit());
    CHECK(builds == 2);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("corrupt") != std::string::npos);
    CHECK(write_structure(third) == write_structure(first));
    // the rebuilt entry replaced the corrupt one
    cache.load_or_build("D4", build);
    CHECK(cache.last_was_hit());
    fs::remove_all(dir);
}

TEST_CASE("TeX schema") {
    const auto d = test::triangular(test::simply_laced(Family::A, 1));
    const auto sym = HRepresentation::symbolic_character(d);
    const auto set = operator_set(d, sym, DiffOperator::Side::Coinduced);
    CHECK(emit_tex(set.operators[0].op, set.params) == "-X^{2}\\partial_{X} - \\lambda X");
    const auto doc = emit_tex(set);
    CHECK(doc.find("% coinduced realization") != std::string::npos);
    CHECK(doc.find("\\[ T(e_{1}) = -X^{2}\\partial_{X} - \\lambda X \\]") != std::string::npos);
    CHECK(doc.find("T(f_{1}) = \\partial_{X}") != std::string::npos);

    const auto ind = operator_set(d, sym, DiffOperator::Side::Induced);
    CHECK(emit_tex(ind).find("I(e_{1}) = -P\\partial_{P}^{2} + \\lambda \\partial_{P}") != std::string::npos);

    CHECK(emit_tex(DiffOperator(DiffOperator::Side::Coinduced, {Parity::Even}, {Parity::Even}), {}) == "0");

    // several variables, rational coefficients, matrix units
    const auto a2 = test::triangular(test::simply_laced(Family::A, 2));
    const auto adj = operator_set(a2, HRepresentation::adjoint(a2), DiffOperator::Side::Coinduced);
    const auto tex = emit_tex(adj);
    CHECK(tex.find("X_{1}") != std::string::npos);
    CHECK(tex.find("E_{") != std::string::npos);
    const auto a2sym = operator_set(a2, HRepresentation::symbolic_character(a2), DiffOperator::Side::Coinduced);
    CHECK(emit_tex(a2sym).find("\\lambda_{1}") != std::string::npos);
}

TEST_CASE("structured output round-trips") {
    for (auto d : {test::triangular(test::simply_laced(Family::A, 2)), test::triangular(test::gl_super(2, 1))}) {
        CAPTURE(d.algebra().name());
        for (auto side : {DiffOperator::Side::Coinduced, DiffOperator::Side::Induced}) {
            for (const auto& rep : {HRepresentation::symbolic_character(d), HRepresentation::adjoint(d)}) {
                const auto set = operator_set(d, rep, side);
                const auto text = emit_structured(set);
                const auto back = parse_structured(text);
                CHECK(back.side == set.side);
                CHECK(back.variables == set.variables);
                CHECK(back.var_parity == set.var_parity);
                CHECK(back.v_parity == set.v_parity);
                CHECK(back.params == set.params);
                REQUIRE(back.operators.size() == set.operators.size());
                for (std::size_t i = 0; i < set.operators.size(); ++i) {
                    CHECK(back.operators[i].generator == set.operators[i].generator);
                    CHECK(back.operators[i].op == set.operators[i].op);
                }
                CHECK(emit_structured(back) == text);
            }
        }
    }
    CHECK_THROWS_AS(parse_structured("{"), FormatError);
    CHECK_THROWS_AS(parse_structured(R"({"format":"other","version":1})"), FormatError);
}
