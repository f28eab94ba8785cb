#include "coindiff/realize.hpp"

#include "coindiff/conventions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace coindiff {

namespace {

int sign_of(bool odd) { return odd ? -1 : 1; }

LambdaPoly constant(const Scalar& c) { return LambdaPoly::constant(c); }

LambdaPoly product(const LambdaPoly& a, const LambdaPoly& b) { return mul(a, b); }

Parity unit_parity(const std::vector<Parity>& vp, std::uint32_t r, std::uint32_t s) { return vp[r] + vp[s]; }

RepMatrix mat_mul(const RepMatrix& a, const RepMatrix& b) {
    RepMatrix r;
    for (const auto& [ka, va] : a) {
        for (const auto& [kb, vb] : b) {
            if (ka.second != kb.first) continue;
            auto& slot = r[{ka.first, kb.second}];
            slot += product(va, vb);
        }
    }
    std::erase_if(r, [](const auto& kv) { return kv.second.empty(); });
    return r;
}

void mat_add(RepMatrix& a, const RepMatrix& b, const Scalar& f) {
    for (const auto& [k, v] : b) a[k] += v * f;
    std::erase_if(a, [](const auto& kv) { return kv.second.empty(); });
}

std::string format_matrix(const RepMatrix& m) {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : m) {
        os << (first ? "" : " + ") << "(" << to_string(v) << ")E_" << k.first << "," << k.second;
        first = false;
    }
    return os.str();
}

// Elements of h that occur in some [h, h].
std::set<std::uint32_t> derived_support(const Decomposition& d) {
    std::set<std::uint32_t> s;
    for (auto a : d.h_indices())
        for (auto b : d.h_indices())
            for (const auto& [k, c] : d.algebra().bracket_basis(a, b).entries()) s.insert(k);
    return s;
}

} // namespace

LambdaPoly lambda(std::uint32_t k) { return LambdaPoly::term(Monomial::of({k, Parity::Even}), 1); }

std::string to_string(const LambdaPoly& p, const std::vector<std::string>& names) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // constant last, higher degree first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Scalar a = abs(c);
        os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
        first = false;
        if (m.is_one()) {
            os << coindiff::to_string(a);
            continue;
        }
        if (a != 1) os << coindiff::to_string(a) << "*";
        bool f1 = true;
        for (const auto& f : m.factors()) {
            os << (f1 ? "" : "*")
               << (f.var < names.size() ? names[f.var] : "lambda_" + std::to_string(f.var + 1));
            if (f.exp > 1) os << "^" << f.exp;
            f1 = false;
        }
    }
    return os.str();
}

// ------------------------------------------------------------ HRepresentation

HRepresentation::HRepresentation(Kind kind, std::vector<Parity> parities, std::vector<RepMatrix> rho,
                                 std::vector<std::string> param_names)
    : kind_(kind), parities_(std::move(parities)), rho_(std::move(rho)), params_(std::move(param_names)) {
    for (auto& m : rho_) std::erase_if(m, [](const auto& kv) { return kv.second.empty(); });
}

std::vector<std::uint32_t> HRepresentation::weight_positions(const Decomposition& d) {
    const auto derived = derived_support(d);
    std::vector<std::uint32_t> pos;
    for (std::uint32_t p = 0; p < d.h_indices().size(); ++p) {
        const auto b = d.h_indices()[p];
        if (!is_odd(d.algebra().parity(b)) && !derived.contains(b)) pos.push_back(p);
    }
    return pos;
}

HRepresentation HRepresentation::character(const Decomposition& d, std::vector<LambdaPoly> values,
                                           std::vector<std::string> param_names) {
    values.resize(d.h_indices().size());
    std::vector<RepMatrix> rho(values.size());
    for (std::size_t p = 0; p < values.size(); ++p) {
        if (values[p].empty()) continue;
        if (is_odd(d.algebra().parity(d.h_indices()[p]))) {
            ValidationReport rep;
            rep.violations.push_back({Violation::Kind::Representation,
                                      {d.h_indices()[p]},
                                      to_string(values[p]),
                                      "0",
                                      "a character must vanish on the odd element " +
                                          d.algebra().element(d.h_indices()[p]).label});
            throw ValidationError("invalid character", std::move(rep));
        }
        rho[p][{0, 0}] = values[p];
    }
    HRepresentation r(Kind::Character, {Parity::Even}, std::move(rho), std::move(param_names));
    auto report = r.check(d);
    if (!report.ok()) throw ValidationError("invalid character: " + report.summary(), report);
    return r;
}

HRepresentation HRepresentation::symbolic_character(const Decomposition& d) {
    std::vector<LambdaPoly> values(d.h_indices().size());
    std::vector<std::string> names;
    const auto pos = weight_positions(d);
    for (std::uint32_t k = 0; k < pos.size(); ++k) {
        values[pos[k]] = lambda(k);
        names.push_back(pos.size() == 1 ? "lambda" : "lambda_" + std::to_string(k + 1));
    }
    return character(d, std::move(values), std::move(names));
}

HRepresentation HRepresentation::numeric_character(const Decomposition& d, const std::vector<Scalar>& weights) {
    const auto pos = weight_positions(d);
    if (weights.size() != pos.size())
        throw std::invalid_argument("expected " + std::to_string(pos.size()) + " weight value(s), got " +
                                    std::to_string(weights.size()));
    std::vector<LambdaPoly> values(d.h_indices().size());
    for (std::size_t k = 0; k < pos.size(); ++k) values[pos[k]] = constant(weights[k]);
    return character(d, std::move(values));
}

HRepresentation HRepresentation::adjoint(const Decomposition& d) {
    const auto& alg = d.algebra();
    std::vector<Parity> par;
    for (std::uint32_t i = 0; i < alg.dim(); ++i) par.push_back(alg.parity(i));
    std::vector<RepMatrix> rho;
    for (auto b : d.h_indices()) {
        RepMatrix m;
        for (std::uint32_t s = 0; s < alg.dim(); ++s)
            for (const auto& [t, c] : alg.bracket_basis(b, s).entries()) m[{t, s}] = constant(c);
        rho.push_back(std::move(m));
    }
    return HRepresentation(Kind::Adjoint, std::move(par), std::move(rho));
}

HRepresentation HRepresentation::custom(const Decomposition& d, std::vector<Parity> parities,
                                        std::vector<RepMatrix> rho) {
    if (rho.size() != d.h_indices().size())
        throw std::invalid_argument("expected one matrix per h basis element");
    for (const auto& m : rho)
        for (const auto& [k, v] : m)
            if (k.first >= parities.size() || k.second >= parities.size())
                throw std::out_of_range("matrix entry outside V");
    HRepresentation r(Kind::Custom, std::move(parities), std::move(rho));
    auto report = r.check(d);
    if (!report.ok()) throw ValidationError("invalid representation: " + report.summary(), report);
    return r;
}

HRepresentation HRepresentation::dual() const {
    std::vector<RepMatrix> rho;
    for (const auto& m : rho_) {
        RepMatrix dm;
        // parity of the element is the parity of any nonzero entry (r, s)
        for (const auto& [k, v] : m) {
            const auto [r, s] = k;
            const Parity b = parities_[r] + parities_[s];
            const int sign = -sign_rule(b, parities_[r]);
            dm[{s, r}] = v * Scalar(sign);
        }
        rho.push_back(std::move(dm));
    }
    return HRepresentation(Kind::Dual, parities_, std::move(rho), params_);
}

ValidationReport HRepresentation::check(const Decomposition& d) const {
    ValidationReport report;
    const auto& alg = d.algebra();
    const auto& h = d.h_indices();
    for (std::uint32_t a = 0; a < h.size(); ++a) {
        for (std::uint32_t b = 0; b < h.size(); ++b) {
            RepMatrix lhs;
            for (const auto& [k, c] : alg.bracket_basis(h[a], h[b]).entries())
                mat_add(lhs, rho_[*d.h_position(k)], c);
            RepMatrix rhs = mat_mul(rho_[a], rho_[b]);
            const int s = sign_rule(alg.parity(h[a]), alg.parity(h[b]));
            mat_add(rhs, mat_mul(rho_[b], rho_[a]), Scalar(-s));
            if (lhs != rhs) {
                report.violations.push_back({Violation::Kind::Representation,
                                             {h[a], h[b]},
                                             format_matrix(lhs),
                                             format_matrix(rhs),
                                             "rho([" + alg.element(h[a]).label + ", " + alg.element(h[b]).label +
                                                 "]) != [rho(a), rho(b)]"});
                return report;
            }
        }
    }
    return report;
}

// ------------------------------------------------------------ ModuleElement

void ModuleElement::add(const Monomial& m, std::uint32_t r, const LambdaPoly& c, int sign) {
    if (c.empty()) return;
    auto [it, inserted] = terms_.try_emplace({m, r}, LambdaPoly{});
    if (sign > 0) it->second += c;
    else it->second -= c;
    if (it->second.empty()) terms_.erase(it);
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

ModuleElement& ModuleElement::operator*=(const Scalar& s) {
    if (is_zero(s)) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

// ------------------------------------------------------------ DiffOperator

void DiffOperator::add(const OpKey& k, const LambdaPoly& c, int sign) {
    if (c.empty()) return;
    auto [it, inserted] = terms_.try_emplace(k, LambdaPoly{});
    if (sign > 0) it->second += c;
    else it->second -= c;
    if (it->second.empty()) terms_.erase(it);
}

Parity DiffOperator::parity() const {
    if (terms_.empty()) return Parity::Even;
    const auto& k = terms_.begin()->first;
    return k.x.parity() + k.d.parity() + unit_parity(v_parity_, k.row, k.col);
}

bool DiffOperator::homogeneous() const {
    const Parity p = parity();
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) {
        const auto& k = kv.first;
        return (k.x.parity() + k.d.parity() + unit_parity(v_parity_, k.row, k.col)) == p;
    });
}

unsigned DiffOperator::order() const {
    unsigned o = 0;
    for (const auto& [k, c] : terms_) o = std::max(o, k.d.degree());
    return o;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
    if (var_parity_.empty() && v_parity_.empty()) {
        side_ = o.side_;
        var_parity_ = o.var_parity_;
        v_parity_ = o.v_parity_;
    }
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
    if (var_parity_.empty() && v_parity_.empty()) {
        side_ = o.side_;
        var_parity_ = o.var_parity_;
        v_parity_ = o.v_parity_;
    }
    for (const auto& [k, c] : o.terms_) add(k, c, -1);
    return *this;
}

DiffOperator& DiffOperator::operator*=(const Scalar& s) {
    if (is_zero(s)) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

namespace {

using Normal = std::map<std::pair<Monomial, Monomial>, Scalar>;

// d^J x^K d^L in normal order (x's left of d's).
Normal weyl(const DiffOperator& op, const Monomial& j, const Monomial& k, const Monomial& l) {
    Normal cur;
    cur[{k, l}] = 1;
    std::vector<std::uint32_t> seq;
    for (const auto& f : j.factors())
        for (std::uint32_t e = 0; e < f.exp; ++e) seq.push_back(f.var);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        const Var v = op.var(*it);
        const Monomial dv = Monomial::of(v);
        Normal next;
        for (const auto& [key, c] : cur) {
            const auto& [xk, dl] = key;
            // d_v x^K = (d_v x^K) + (-1)^{|v||K|} x^K d_v
            if (auto der = left_derivative(xk, v)) {
                auto& slot = next[{der->second, dl}];
                slot += c * der->first;
            }
            if (auto prod = multiply(dv, dl)) {
                auto& slot = next[{xk, prod->monomial}];
                slot += c * (sign_rule(v.parity, xk.parity()) * prod->sign);
            }
        }
        std::erase_if(next, [](const auto& kv) { return is_zero(kv.second); });
        cur = std::move(next);
    }
    return cur;
}

} // namespace

namespace {

bool shares_variable(const Monomial& j, const Monomial& k) {
    for (const auto& f : j.factors())
        if (k.exponent(f.var) > 0) return true;
    return false;
}

// a o b; with drop_pure the terms in which no derivative of a reaches the
// coefficients of b are omitted (they cancel in a supercommutator when End(V)
// is commutative).
DiffOperator compose(const DiffOperator& a, const DiffOperator& b, bool drop_pure) {
    DiffOperator r(a.side(), a.var_parity().empty() ? b.var_parity() : a.var_parity(),
                   a.v_parity().empty() ? b.v_parity() : a.v_parity());
    for (const auto& [ka, ca] : a.terms()) {
        const Parity ea = unit_parity(r.v_parity(), ka.row, ka.col);
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.col != kb.row) continue;
            if (drop_pure && !shares_variable(ka.d, kb.x)) continue;
            const int s = sign_rule(ea, kb.x.parity() + kb.d.parity());
            const LambdaPoly cc = product(ca, cb);
            for (const auto& [xd, c] : weyl(r, ka.d, kb.x, kb.d)) {
                if (drop_pure && xd.first.degree() == kb.x.degree()) continue;
                auto prod = multiply(ka.x, xd.first);
                if (!prod) continue;
                r.add({prod->monomial, xd.second, ka.row, kb.col}, cc * (c * (s * prod->sign)));
            }
        }
    }
    return r;
}

} // namespace

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) { return compose(a, b, false); }

ModuleElement DiffOperator::apply(const ModuleElement& e, std::optional<unsigned> max_degree) const {
    ModuleElement r;
    for (const auto& [k, c] : terms_) {
        const Parity ek = unit_parity(v_parity_, k.row, k.col);
        for (const auto& [key, v] : e.terms()) {
            const auto& [m, q] = key;
            if (k.col != q || m.degree() < k.d.degree()) continue;
            // d^J applied to x^K, rightmost derivative first
            Scalar coeff = 1;
            Monomial cur = m;
            bool zero = false;
            std::vector<std::uint32_t> seq;
            for (const auto& f : k.d.factors())
                for (std::uint32_t i = 0; i < f.exp; ++i) seq.push_back(f.var);
            for (auto it = seq.rbegin(); it != seq.rend() && !zero; ++it) {
                auto der = left_derivative(cur, var(*it));
                if (!der) {
                    zero = true;
                    break;
                }
                coeff *= der->first;
                cur = der->second;
            }
            if (zero) continue;
            auto prod = multiply(k.x, cur);
            if (!prod) continue;
            if (max_degree && prod->monomial.degree() > *max_degree) continue;
            coeff *= sign_rule(ek, m.parity()) * prod->sign;
            r.add(prod->monomial, k.row, product(c, v) * coeff);
        }
    }
    return r;
}

DiffOperator supercommutator(const DiffOperator& a, const DiffOperator& b) {
    const bool commutative = a.v_parity().size() <= 1 && b.v_parity().size() <= 1;
    const bool homogeneous = a.homogeneous() && b.homogeneous();
    DiffOperator r = compose(a, b, commutative && homogeneous);
    DiffOperator ba = compose(b, a, commutative && homogeneous);
    if (is_odd(a.parity()) && is_odd(b.parity())) r += ba;
    else r -= ba;
    return r;
}

namespace {

unsigned odd_degree(const Monomial& m) {
    unsigned k = 0;
    for (const auto& f : m.factors())
        if (is_odd(f.parity)) k += f.exp;
    return k;
}

unsigned even_degree(const Monomial& m) { return m.degree() - odd_degree(m); }

// X^i -> (-1)^{|X^i|} d/dP_i: the transpose of multiplication by X^i is the
// signed left derivative
int substitution_sign(const Monomial& m) {
    return kOperatorConventions.induced_signed_derivative ? sign_of(odd_degree(m) % 2) : 1;
}

} // namespace

static std::vector<Parity> var_parities(const Decomposition& d) {
    std::vector<Parity> p;
    for (std::uint32_t i = 0; i < d.num_vars(); ++i) p.push_back(d.var(i).parity);
    return p;
}

DiffOperator coinduced_operator(const Decomposition& d, const GPoly& phi, const GPoly& h,
                                const HRepresentation& rep) {
    DiffOperator t(DiffOperator::Side::Coinduced, var_parities(d), rep.parities());
    for (const auto& [m, vec] : phi.terms()) {
        const int s = sign_of(m.degree() % 2);
        for (const auto& [idx, c] : vec.entries()) {
            const auto i = *d.var_of(idx);
            const Var v = d.var(i);
            const int odd = kOperatorConventions.coinduced_odd_sign ? sign_of(is_odd(v.parity)) : 1;
            const LambdaPoly coeff = constant(c * (s * odd));
            for (std::uint32_t r = 0; r < rep.dim(); ++r) t.add({m, Monomial::of(v), r, r}, coeff);
        }
    }
    for (const auto& [m, vec] : h.terms()) {
        const int s = sign_of(m.degree() % 2);
        for (const auto& [idx, c] : vec.entries())
            for (const auto& [rs, a] : rep.rho(*d.h_position(idx)))
                t.add({m, Monomial{}, rs.first, rs.second}, a * (c * s));
    }
    return t;
}

DiffOperator induced_operator(const Decomposition& d, Parity g_parity, const GPoly& phi, const GPoly& h,
                              const HRepresentation& rep) {
    DiffOperator t(DiffOperator::Side::Induced, var_parities(d), rep.parities());
    for (const auto& [m, vec] : phi.terms()) {
        for (const auto& [idx, c] : vec.entries()) {
            const auto i = *d.var_of(idx);
            const Var v = d.var(i);
            const int s = sign_of(is_odd(Parity::Odd + g_parity) && is_odd(v.parity)) * substitution_sign(m);
            const LambdaPoly coeff = constant(c * s);
            for (std::uint32_t r = 0; r < rep.dim(); ++r) t.add({Monomial::of(v), m, r, r}, coeff);
        }
    }
    for (const auto& [m, vec] : h.terms())
        for (const auto& [idx, c] : vec.entries())
            for (const auto& [rs, a] : rep.rho(*d.h_position(idx)))
                t.add({Monomial{}, m, rs.first, rs.second}, a * (c * substitution_sign(m)));
    return t;
}

std::vector<Monomial> monomials_up_to(const std::vector<Parity>& var_parity, unsigned max_degree) {
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> cur;
    auto rec = [&](auto&& self, std::uint32_t i, unsigned left) -> void {
        if (i == var_parity.size()) {
            out.push_back(Monomial::from_factors(cur));
            return;
        }
        self(self, i + 1, left);
        const unsigned cap = is_odd(var_parity[i]) ? std::min(1u, left) : left;
        for (unsigned e = 1; e <= cap; ++e) {
            cur.push_back({i, e, var_parity[i]});
            self(self, i + 1, left - e);
            cur.pop_back();
        }
    };
    rec(rec, 0, max_degree);
    std::sort(out.begin(), out.end());
    return out;
}

LambdaPoly pair_elements(const ModuleElement& f, const ModuleElement& m, const std::vector<Parity>& v_parity) {
    LambdaPoly r;
    for (const auto& [kf, cf] : f.terms()) {
        for (const auto& [km, cm] : m.terms()) {
            if (kf.second != km.second || kf.first.degree() != km.first.degree()) continue;
            const Scalar p = pair_monomials(kf.first, km.first);
            if (is_zero(p)) continue;
            const int s = sign_rule(v_parity[kf.second], km.first.parity()) * sign_of((kOperatorConventions.pairing_even_twist ? even_degree(km.first) : km.first.degree()) % 2);
            r += product(cf, cm) * (p * s);
        }
    }
    return r;
}

std::optional<DualityFailure> pair_duality_check(const Decomposition& d,
                                                 const std::vector<DiffOperator>& coinduced_dual,
                                                 const std::vector<DiffOperator>& induced,
                                                 const HRepresentation& rep, unsigned truncation, bool flip_sign) {
    const auto monos = monomials_up_to(var_parities(d), truncation);
    const auto& vp = rep.parities();
    for (std::uint32_t g = 0; g < coinduced_dual.size(); ++g) {
        const Parity pg = d.algebra().parity(g);
        std::vector<ModuleElement> im;
        for (const auto& m : monos) {
            for (std::uint32_t s = 0; s < rep.dim(); ++s) {
                ModuleElement e;
                e.add(m, s, LambdaPoly::constant(1));
                im.push_back(induced[g].apply(e));
            }
        }
        for (const auto& f : monos) {
            for (std::uint32_t r = 0; r < rep.dim(); ++r) {
                ModuleElement fe;
                fe.add(f, r, LambdaPoly::constant(1));
                const ModuleElement tf = coinduced_dual[g].apply(fe);
                const Parity pf = f.parity() + vp[r];
                int sign = -sign_rule(pg, pf);
                if (flip_sign) sign = -sign;
                std::size_t idx = 0;
                for (const auto& m : monos) {
                    for (std::uint32_t s = 0; s < rep.dim(); ++s, ++idx) {
                        ModuleElement me;
                        me.add(m, s, LambdaPoly::constant(1));
                        const LambdaPoly lhs = pair_elements(tf, me, vp);
                        const LambdaPoly rhs = pair_elements(fe, im[idx], vp) * Scalar(sign);
                        if (lhs != rhs)
                            return DualityFailure{g, f, r, m, s, to_string(lhs, rep.param_names()),
                                                  to_string(rhs, rep.param_names())};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace coindiff
