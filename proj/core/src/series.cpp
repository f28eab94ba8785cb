#include "coindiff/series.hpp"

#include <algorithm>
#include <functional>

namespace coindiff {

namespace {

// sum_m a(m) t^m v; stops early once t^m v vanishes
GPoly apply_series(const Decomposition& d, const std::function<Scalar(unsigned)>& a, const GPoly& v,
                   unsigned truncation, unsigned first = 0) {
    GPoly result(truncation);
    GPoly cur = v;
    cur.set_truncation(truncation);
    for (unsigned m = 0; m < first && !cur.empty(); ++m) cur = ad_xp(d, cur);
    for (unsigned m = first; !cur.empty(); ++m) {
        Scalar c = a(m);
        if (!is_zero(c)) result += cur * c;
        if (m == truncation) break;
        cur = ad_xp(d, cur);
    }
    return result;
}

Scalar sign_pow(unsigned m) { return m % 2 ? Scalar(-1) : Scalar(1); }

// e^{-t}
Scalar exp_coeff(unsigned m) { return sign_pow(m) / Scalar(factorial(m)); }
// -t/(e^{-t}-1) = sum_m b_m (-t)^m / m!   (b_1 = -1/2)
Scalar phi_coeff(unsigned m) {
    return sign_pow(m) * bernoulli(m, BernoulliSign::Minus) / Scalar(factorial(m));
}
// t/(e^{-t}-1)
Scalar f_coeff(unsigned m) { return -phi_coeff(m); }
// (e^{-t}-1)/t
Scalar g_coeff(unsigned m) { return sign_pow(m + 1) / Scalar(factorial(m + 1)); }

bool has_degree(const GPoly& p, unsigned deg) {
    return std::any_of(p.terms().begin(), p.terms().end(),
                       [&](const auto& kv) { return kv.first.degree() == deg; });
}

PhiH finish(GPoly phi, GPoly h, const GPoly& u, unsigned truncation) {
    PhiH r;
    r.truncation = truncation;
    r.exact = !has_degree(phi, truncation + 1) && !has_degree(h, truncation + 1) &&
              !has_degree(u, truncation + 1);
    phi.set_truncation(truncation);
    h.set_truncation(truncation);
    r.phi = std::move(phi);
    r.h = std::move(h);
    return r;
}

} // namespace

GPoly ad_xp(const Decomposition& d, const GPoly& v) {
    const auto& alg = d.algebra();
    const auto& minus = d.minus_indices();
    GPoly r(v.truncation());
    for (const auto& [m, w] : v.terms()) {
        if (v.truncation() && m.degree() + 1 > *v.truncation()) continue;
        for (std::uint32_t i = 0; i < minus.size(); ++i) {
            Vector br;
            for (const auto& [k, c] : w.entries()) br.add_scaled(alg.bracket_basis(minus[i], k), c);
            if (br.empty()) continue;
            auto prod = multiply(m, Monomial::of(d.var(i)));
            if (!prod) continue;
            r.add_term(prod->monomial, br, prod->sign);
        }
    }
    return r;
}

GPoly exp_neg_ad(const Decomposition& d, const Vector& g, unsigned truncation) {
    return apply_series(d, exp_coeff, GPoly::constant(g, truncation), truncation);
}

PhiH phi_h_subalgebra(const Decomposition& d, const Vector& g, unsigned truncation) {
    if (!d.is_subalgebra())
        throw MisuseError("g_- is not a subalgebra; use the general engine");
    const unsigned t1 = truncation + 1;
    GPoly u = exp_neg_ad(d, g, t1);
    GPoly phi = apply_series(d, phi_coeff, d.project_minus(u), t1);
    return finish(std::move(phi), d.project_h(u), u, truncation);
}

PhiH phi_h_general(const Decomposition& d, const Vector& g, unsigned truncation) {
    const unsigned t1 = truncation + 1;
    GPoly u = exp_neg_ad(d, g, t1);
    // (1 - N) phi = Pi_- u with N = Pi_- sum_{m>=1} (-1)^{m+1} t^m/(m+1)!; every
    // application of N raises the X-degree, so the Neumann series is finite
    GPoly term = d.project_minus(u);
    GPoly phi = term;
    for (unsigned k = 0; k <= t1 && !term.empty(); ++k) {
        term = d.project_minus(apply_series(d, g_coeff, term, t1, 1));
        phi += term;
    }
    GPoly h = d.project_h(u + apply_series(d, g_coeff, phi, t1));
    return finish(std::move(phi), std::move(h), u, truncation);
}

bool verify_defining_identity(const Decomposition& d, const Vector& g, const GPoly& phi,
                              const GPoly& h, unsigned truncation) {
    GPoly p = phi;
    p.set_truncation(truncation);
    GPoly hh = h;
    hh.set_truncation(truncation);
    GPoly lhs = p - apply_series(d, f_coeff, hh, truncation);
    GPoly rhs = -apply_series(d, f_coeff, exp_neg_ad(d, g, truncation), truncation);
    return lhs == rhs;
}

std::optional<unsigned> default_truncation(const Decomposition& d,
                                           std::span<const std::uint32_t> generators) {
    const auto& alg = d.algebra();
    if (!alg.graded()) return std::nullopt;
    int best = 0;
    for (auto g : generators) best = std::max(best, alg.depth() + *alg.element(g).degree);
    return static_cast<unsigned>(best);
}

} // namespace coindiff
