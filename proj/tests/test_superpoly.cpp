#include "coindiff/realize.hpp"
#include "coindiff/superpoly.hpp"

#include <doctest.h>

#include "superpoly_oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace coindiff;
using namespace coindiff::test;

TEST_CASE("odd squares vanish") {
    for (std::uint32_t i = 0; i < kParity.size(); ++i) {
        const auto sq = multiply(Monomial::of(var(i)), Monomial::of(var(i)));
        CHECK(sq.has_value() == !is_odd(kParity[i]));
        const std::vector<Var> w{var(i), var(0), var(i)};
        CHECK(normalize(w).has_value() == !is_odd(kParity[i]));
    }
}

TEST_CASE("sign rule on random words up to degree 5") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto w = random_word(rng, 1 + trial % 5);
        const auto n = normalize(w);
        if (repeats_odd(w)) {
            CHECK_FALSE(n.has_value());
            continue;
        }
        REQUIRE(n.has_value());
        CHECK(n->sign == koszul_sign(w));
        CHECK(n->monomial.degree() == w.size());
    }
}

TEST_CASE("supercommutativity and associativity on random monomials") {
    std::mt19937 rng(99);
    auto random_monomial = [&](unsigned len) {
        for (;;) {
            auto w = random_word(rng, len);
            if (auto n = normalize(w)) return n->monomial;
        }
    };
    for (int trial = 0; trial < 2000; ++trial) {
        const auto a = random_monomial(trial % 3), b = random_monomial(1 + trial % 2), c = random_monomial(trial % 2);
        const auto ab = multiply(a, b), ba = multiply(b, a);
        REQUIRE(ab.has_value() == ba.has_value());
        if (ab) {
            CHECK(ab->monomial == ba->monomial);
            CHECK(ab->sign == sign_rule(a.parity(), b.parity()) * ba->sign);
            // (ab)c = a(bc), both possibly zero
            const auto bc = multiply(b, c);
            const auto ab_c = multiply(ab->monomial, c);
            const auto a_bc = bc ? multiply(a, bc->monomial) : std::nullopt;
            REQUIRE(ab_c.has_value() == a_bc.has_value());
            if (ab_c) {
                CHECK(ab_c->monomial == a_bc->monomial);
                CHECK(ab->sign * ab_c->sign == bc->sign * a_bc->sign);
            }
        }
    }
}

TEST_CASE("pairing of monomials matches the permutation-sum oracle") {
    const auto monos = monomials_up_to(kParity, 5);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    for (const auto& m : monos) CHECK(pair_monomials(m, m) == pairing_oracle(m, m));
    for (int trial = 0; trial < 2000; ++trial) {
        const auto& x = monos[pick(rng)];
        const auto& p = monos[pick(rng)];
        CHECK(pair_monomials(x, p) == pairing_oracle(x, p));
    }
    // <X^1 X^3, P_1 P_3> = -1 for two odd letters, <X^2, P^2> = 2! for an even one
    const auto odd2 = *multiply(Monomial::of(var(1)), Monomial::of(var(3)));
    CHECK(pair_monomials(odd2.monomial, odd2.monomial) == -1);
    CHECK(pair_monomials(Monomial::of(var(0), 2), Monomial::of(var(0), 2)) == 2);
}

TEST_CASE("Fourier transform: P_i* = (-1)^{|X^i|} d/dX^i and (d/dP_i)* = X^i") {
    const auto t = test::fourier_tally(5);
    CHECK(t.failures == 0);
    CHECK(t.nontrivial > 100);
}

TEST_CASE("left derivative moves the variable to the front") {
    // d/dX^1 (X^1 X^3) = X^3, d/dX^3 (X^1 X^3) = -X^1 (both odd)
    const auto m = multiply(Monomial::of(var(1)), Monomial::of(var(3)))->monomial;
    auto d1 = left_derivative(m, var(1));
    auto d3 = left_derivative(m, var(3));
    REQUIRE(d1);
    REQUIRE(d3);
    CHECK(d1->first == 1);
    CHECK(d1->second == Monomial::of(var(3)));
    CHECK(d3->first == -1);
    CHECK(d3->second == Monomial::of(var(1)));
    // even: d/dX^0 X^0^3 = 3 X^0^2
    auto d0 = left_derivative(Monomial::of(var(0), 3), var(0));
    REQUIRE(d0);
    CHECK(d0->first == 3);
    CHECK(d0->second == Monomial::of(var(0), 2));
    CHECK_FALSE(left_derivative(Monomial::of(var(0)), var(2)).has_value());
}

TEST_CASE("truncated products drop high degrees") {
    using P = SuperPoly<Scalar>;
    P a(3), b(3);
    a.add_term(Monomial::of(var(0), 2), 1);
    b.add_term(Monomial::of(var(2), 2), 1);
    b.add_term(Monomial{}, 1);
    const P c = mul(a, b);
    CHECK(c.size() == 1);
    CHECK(c.degree() == 2);
}
