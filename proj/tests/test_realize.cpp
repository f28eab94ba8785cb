#include "coindiff/io.hpp"
#include "coindiff/realize.hpp"
#include "coindiff/verify.hpp"

#include <doctest.h>

#include <map>

#include "pbw_oracle.hpp"
#include "support.hpp"

using namespace coindiff;
using test::num;
using test::verma_e;

namespace {

struct Sl2 {
    Decomposition d = test::triangular(test::simply_laced(Family::A, 1));
    HRepresentation rep = HRepresentation::symbolic_character(d);
    std::uint32_t e = d.algebra().require_index("e_1"), h = d.algebra().require_index("h_1"),
                  f = d.algebra().require_index("f_1");

    DiffOperator coinduced(std::uint32_t g) const {
        auto s = phi_h_subalgebra(d, Vector::basis(g), 4);
        return coinduced_operator(d, s.phi, s.h, rep);
    }
    DiffOperator induced(std::uint32_t g) const {
        auto s = phi_h_subalgebra(d, Vector::basis(g), 4);
        return induced_operator(d, Parity::Even, s.phi, s.h, rep);
    }
    DiffOperator blank(DiffOperator::Side side) const { return DiffOperator(side, {Parity::Even}, {Parity::Even}); }
    Monomial x(unsigned k) const { return k ? Monomial::of(d.var(0), k) : Monomial{}; }
};

DiffOperator printed_form(const DiffOperator& op) {
    // the (-1)^{|X^i|} factor in front of phi^i d/dX^i
    DiffOperator r(op.side(), op.var_parity(), op.v_parity());
    for (const auto& [k, c] : op.terms()) r.add(k, c, is_odd(k.d.parity()) ? -1 : 1);
    return r;
}

} // namespace

TEST_CASE("sl(2) golden coinduced operators") {
    const Sl2 s;
    using S = DiffOperator::Side;
    auto te = s.blank(S::Coinduced), th = s.blank(S::Coinduced), tf = s.blank(S::Coinduced);
    te.add({s.x(2), s.x(1), 0, 0}, num(-1));
    te.add({s.x(1), s.x(0), 0, 0}, lambda(0), -1);
    th.add({s.x(1), s.x(1), 0, 0}, num(2));
    th.add({s.x(0), s.x(0), 0, 0}, lambda(0));
    tf.add({s.x(0), s.x(1), 0, 0}, num(1));
    CHECK(s.coinduced(s.e) == te);
    CHECK(s.coinduced(s.h) == th);
    CHECK(s.coinduced(s.f) == tf);
    CHECK(emit_tex(s.coinduced(s.e), s.rep.param_names()) == "-X^{2}\\partial_{X} - \\lambda X");
    // [T(e), T(f)] = T(h), [T(h), T(e)] = 2 T(e)
    CHECK(supercommutator(te, tf) == th);
    auto two_te = te;
    two_te *= Scalar(2);
    CHECK(supercommutator(th, te) == two_te);
    CHECK(supercommutator(th, th).empty());
}

TEST_CASE("sl(2) golden induced operators and the Verma action against PBW rewriting") {
    const Sl2 s;
    using S = DiffOperator::Side;
    auto ie = s.blank(S::Induced), ih = s.blank(S::Induced), i_f = s.blank(S::Induced);
    ie.add({s.x(0), s.x(1), 0, 0}, lambda(0));
    ie.add({s.x(1), s.x(2), 0, 0}, num(-1));
    ih.add({s.x(0), s.x(0), 0, 0}, lambda(0));
    ih.add({s.x(1), s.x(1), 0, 0}, num(-2));
    i_f.add({s.x(1), s.x(0), 0, 0}, num(1));
    CHECK(s.induced(s.e) == ie);
    CHECK(s.induced(s.h) == ih);
    CHECK(s.induced(s.f) == i_f);

    for (unsigned n = 0; n <= 6; ++n) {
        CAPTURE(n);
        ModuleElement fn;
        fn.add(s.x(n), 0, num(1));
        const auto got = s.induced(s.e).apply(fn);
        ModuleElement want;
        for (const auto& [k, c] : verma_e(n)) want.add(s.x(k), 0, c);
        CHECK(got == want);
        // closed form n (lambda - n + 1)
        ModuleElement closed;
        if (n) {
            LambdaPoly c = lambda(0);
            c += num(1 - static_cast<long>(n));
            c *= Scalar(n);
            closed.add(s.x(n - 1), 0, c);
        }
        CHECK(got == closed);
    }
}

TEST_CASE("gl(1|1) coinduced homomorphism") {
    const auto alg = std::make_shared<const LieSuperAlgebra>(load_custom(COINDIFF_TEST_DATA "/gl11.lsa"));
    const auto d = test::triangular(alg);
    const auto sym = HRepresentation::symbolic_character(d);
    CHECK(check_homomorphism(d, sym, Realization::Coinduced).status == Status::Pass);
    CHECK(check_homomorphism(d, HRepresentation::adjoint(d), Realization::Coinduced).status == Status::Pass);

    // The operator form with (-1)^{|X^i|} in front of the derivative is not a
    // homomorphism on gl(1|1).
    std::vector<DiffOperator> printed;
    for (std::uint32_t g = 0; g < alg->dim(); ++g) {
        auto s = phi_h_subalgebra(d, Vector::basis(g), 3);
        printed.push_back(printed_form(coinduced_operator(d, s.phi, s.h, sym)));
    }
    bool broken = false;
    for (std::uint32_t a = 0; a < alg->dim(); ++a)
        for (std::uint32_t b = 0; b < alg->dim(); ++b) {
            DiffOperator rhs(printed[0].side(), printed[0].var_parity(), printed[0].v_parity());
            for (const auto& [k, c] : alg->bracket_basis(a, b).entries()) {
                auto o = printed[k];
                o *= c;
                rhs += o;
            }
            broken |= !(supercommutator(printed[a], printed[b]) == rhs);
        }
    CHECK(broken);
}

TEST_CASE("gl(m|n) coinduced and induced homomorphism sweeps") {
    for (auto [m, n] : {std::pair{2u, 1u}, {1u, 2u}, {2u, 2u}}) {
        const auto d = test::triangular(test::gl_super(m, n));
        CAPTURE(d.algebra().name());
        const auto sym = HRepresentation::symbolic_character(d);
        CHECK(check_homomorphism(d, sym, Realization::Coinduced).status == Status::Pass);
        CHECK(check_homomorphism(d, HRepresentation::adjoint(d), Realization::Coinduced).status == Status::Pass);
    }
}

TEST_CASE("gl(m|n) induced homomorphism") {
    for (auto [m, n] : {std::pair{1u, 1u}, {2u, 1u}, {1u, 2u}, {2u, 2u}}) {
        const auto d = test::triangular(test::gl_super(m, n));
        CAPTURE(d.algebra().name());
        const auto r = check_homomorphism(d, HRepresentation::symbolic_character(d), Realization::Induced);
        CHECK_MESSAGE(r.status == Status::Pass, r.counterexample);
        const auto adj = check_homomorphism(d, HRepresentation::adjoint(d), Realization::Induced, 4u);
        CHECK_MESSAGE(adj.status == Status::Pass, adj.counterexample);
    }
}

TEST_CASE("duality pairing on sl(2), gl(3), gl(m|n)") {
    std::vector<Decomposition> ds{test::triangular(test::simply_laced(Family::A, 1)), test::triangular(test::gl(3)),
                                  test::triangular(test::gl_super(1, 1)), test::triangular(test::gl_super(2, 1)),
                                  test::triangular(test::gl_super(1, 2))};
    for (const auto& d : ds) {
        CAPTURE(d.algebra().name());
        const auto r = check_duality(d, HRepresentation::symbolic_character(d), 4);
        CHECK_MESSAGE(r.status == Status::Pass, r.counterexample);
        // the flipped sign must be detected
        CHECK(check_duality(d, HRepresentation::symbolic_character(d), 4, true).status == Status::Fail);
    }
    const auto gl21 = test::triangular(test::gl_super(2, 1));
    CHECK(check_duality(gl21, HRepresentation::adjoint(gl21), 3).status == Status::Pass);
}

TEST_CASE("representations: adjoint, custom file, numeric weights, validation") {
    const Sl2 s;
    CHECK(check_homomorphism(s.d, HRepresentation::adjoint(s.d), Realization::Coinduced).status == Status::Pass);
    const auto fund = load_representation(COINDIFF_TEST_DATA "/sl2_fundamental.rep", s.d);
    CHECK(fund.dim() == 2);
    CHECK(check_homomorphism(s.d, fund, Realization::Coinduced).status == Status::Pass);
    CHECK(check_homomorphism(s.d, fund, Realization::Induced).status == Status::Pass);

    const auto numeric = HRepresentation::numeric_character(s.d, {Scalar(3)});
    auto sp = phi_h_subalgebra(s.d, Vector::basis(s.h), 2);
    const auto th = coinduced_operator(s.d, sp.phi, sp.h, numeric);
    CHECK(emit_tex(th, {}) == "2X\\partial_{X} + 3");
    CHECK_THROWS_AS(HRepresentation::numeric_character(s.d, {Scalar(1), Scalar(2)}), std::invalid_argument);

    // rho(e) = 1 on a character violates rho([h, e]) = [rho(h), rho(e)]
    std::vector<LambdaPoly> values(s.d.h_indices().size());
    values[*s.d.h_position(s.e)] = LambdaPoly::constant(1);
    CHECK_THROWS_AS(HRepresentation::character(s.d, values), ValidationError);
}

TEST_CASE("abelian algebra with trivial character gives zero operators") {
    std::vector<BasisElement> basis{{"x", Parity::Even, -1}, {"y", Parity::Even, 0}, {"z", Parity::Even, -1}};
    const auto alg = std::make_shared<const LieSuperAlgebra>("abelian", basis, std::vector<BracketEntry>{});
    const auto d = Decomposition::triangular(alg);
    const auto trivial = HRepresentation::numeric_character(d, {Scalar(0)});
    const auto y = alg->require_index("y");
    auto s = phi_h_subalgebra(d, Vector::basis(y), 2);
    CHECK(coinduced_operator(d, s.phi, s.h, trivial).empty());
    CHECK(emit_tex(coinduced_operator(d, s.phi, s.h, trivial), {}) == "0");
}

TEST_CASE("dual representation is contragredient") {
    const auto d = test::triangular(test::gl_super(2, 1));
    const auto adj = HRepresentation::adjoint(d);
    CHECK(adj.check(d).ok());
    CHECK(adj.dual().check(d).ok());
}
