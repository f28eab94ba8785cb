#include "coindiff/verify.hpp"

#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>

namespace coindiff {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string monomial_text(const Decomposition& d, const Monomial& m) {
    if (m.is_one()) return "1";
    std::string s;
    for (const auto& f : m.factors()) {
        if (!s.empty()) s += "*";
        s += "X(" + d.algebra().element(d.minus_indices()[f.var]).label + ")";
        if (f.exp > 1) s += "^" + std::to_string(f.exp);
    }
    return s;
}

// First differing term of two g-valued series, or empty.
std::string first_difference(const Decomposition& d, const GPoly& a, const GPoly& b, const std::string& a_name,
                             const std::string& b_name) {
    std::set<Monomial> keys;
    for (const auto& [m, v] : a.terms()) keys.insert(m);
    for (const auto& [m, v] : b.terms()) keys.insert(m);
    for (const auto& m : keys) {
        const Vector* va = a.coefficient(m);
        const Vector* vb = b.coefficient(m);
        const Vector za, zb;
        const Vector& x = va ? *va : za;
        const Vector& y = vb ? *vb : zb;
        if (x == y) continue;
        std::set<std::uint32_t> comps;
        for (const auto& [i, c] : x.entries()) comps.insert(i);
        for (const auto& [i, c] : y.entries()) comps.insert(i);
        for (auto i : comps) {
            if (x.coeff(i) == y.coeff(i)) continue;
            return "at " + monomial_text(d, m) + " (x) " + d.algebra().element(i).label + ": " + a_name + " = " +
                   to_string(x.coeff(i)) + ", " + b_name + " = " + to_string(y.coeff(i));
        }
    }
    return {};
}

std::string op_difference(const DiffOperator& a, const DiffOperator& b, const std::vector<std::string>& names) {
    std::set<OpKey> keys;
    for (const auto& [k, c] : a.terms()) keys.insert(k);
    for (const auto& [k, c] : b.terms()) keys.insert(k);
    for (const auto& k : keys) {
        auto ia = a.terms().find(k);
        auto ib = b.terms().find(k);
        const LambdaPoly za, zb;
        const LambdaPoly& x = ia == a.terms().end() ? za : ia->second;
        const LambdaPoly& y = ib == b.terms().end() ? zb : ib->second;
        if (x == y) continue;
        return "term x-degree " + std::to_string(k.x.degree()) + ", derivative order " +
               std::to_string(k.d.degree()) + ", E_" + std::to_string(k.row) + std::to_string(k.col) +
               ": lhs = " + to_string(x, names) + ", rhs = " + to_string(y, names);
    }
    return {};
}

DiffOperator window(const DiffOperator& op, unsigned max_x_degree) {
    DiffOperator r(op.side(), op.var_parity(), op.v_parity());
    for (const auto& [k, c] : op.terms())
        if (k.x.degree() <= max_x_degree) r.add(k, c);
    return r;
}

PhiH engine(const Decomposition& d, std::uint32_t g, unsigned truncation) {
    return d.is_subalgebra() ? phi_h_subalgebra(d, Vector::basis(g), truncation)
                             : phi_h_general(d, Vector::basis(g), truncation);
}

unsigned generator_truncation(const Decomposition& d, std::uint32_t g, std::optional<unsigned> given) {
    if (given) return *given;
    const std::uint32_t one[] = {g};
    if (auto t = default_truncation(d, one)) return *t;
    throw std::invalid_argument("an explicit truncation is required for ungraded algebras");
}

} // namespace

const char* to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Warn: return "warn";
    case Status::Fail: return "fail";
    case Status::Truncated: return "truncated";
    }
    return "?";
}

std::string to_text(const std::vector<Report>& reports, bool with_timing) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << "[" << to_string(r.status) << "] " << r.check << " (" << r.subject << ")";
        if (with_timing) os << " " << std::fixed << std::setprecision(2) << r.seconds << "s";
        os << "\n";
        if (!r.counterexample.empty()) os << "    counterexample: " << r.counterexample << "\n";
        for (const auto& l : r.details) os << "    " << l << "\n";
    }
    return os.str();
}

std::string to_json(const std::vector<Report>& reports, bool with_timing) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j{{"check", r.check},
                         {"subject", r.subject},
                         {"status", to_string(r.status)},
                         {"details", r.details}};
        if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
        else j["counterexample"] = nullptr;
        if (with_timing) j["seconds"] = r.seconds;
        arr.push_back(std::move(j));
    }
    return nlohmann::json{{"reports", arr}}.dump(2) + "\n";
}

std::vector<std::uint32_t> generators_of_degree(const Decomposition& d, int degree) {
    std::vector<std::uint32_t> r;
    const auto& alg = d.algebra();
    for (std::uint32_t i = 0; i < alg.dim(); ++i)
        if (alg.element(i).degree == degree) r.push_back(i);
    return r;
}

Report check_engine_equivalence(const Decomposition& d, std::optional<unsigned> truncation,
                                const PathConventions& conv) {
    const auto t0 = Clock::now();
    const auto& alg = d.algebra();
    Report r{"engine-equivalence", alg.name(), Status::Pass, {}, {}, 0};
    bool truncated = false;

    if (!d.is_subalgebra()) {
        r.details.push_back("g_- is not a subalgebra: general engine checked by substitution");
        for (std::uint32_t g = 0; g < alg.dim(); ++g) {
            const unsigned t = generator_truncation(d, g, truncation);
            auto ph = phi_h_general(d, Vector::basis(g), t);
            truncated |= !ph.exact;
            if (!verify_defining_identity(d, Vector::basis(g), ph.phi, ph.h, t)) {
                r.status = Status::Fail;
                r.counterexample = "generator " + alg.element(g).label + ": defining identity fails";
                break;
            }
        }
        if (truncated && r.status == Status::Pass)
            r.details.push_back("series do not terminate; identity verified up to the truncation degree");
        r.seconds = since(t0);
        return r;
    }

    ActionGraph graph(d);
    if (!graph.acyclic() && !truncation)
        throw std::invalid_argument("cyclic action graph: an explicit truncation is required");
    PathIntegralOptions opts;
    opts.conventions = conv;
    for (std::uint32_t g = 0; g < alg.dim() && r.status == Status::Pass; ++g) {
        const unsigned t = generator_truncation(d, g, truncation);
        const auto& label = alg.element(g).label;
        auto sub = phi_h_subalgebra(d, Vector::basis(g), t);
        auto gen = phi_h_general(d, Vector::basis(g), t);
        truncated |= !sub.exact;
        opts.truncation = graph.acyclic() ? std::nullopt : std::optional<unsigned>(t);
        auto p = path_integral(graph, g, opts);
        const GPoly pa = p.a.truncated(t), pb = p.b.truncated(t);
        std::string diff;
        if (!(diff = first_difference(d, pa, sub.phi, "graph A", "series phi")).empty() ||
            !(diff = first_difference(d, pb, sub.h, "graph B", "series h")).empty() ||
            !(diff = first_difference(d, gen.phi, sub.phi, "general phi", "subalgebra phi")).empty() ||
            !(diff = first_difference(d, gen.h, sub.h, "general h", "subalgebra h")).empty()) {
            r.status = Status::Fail;
            r.counterexample = "generator " + label + " " + diff;
        } else if (!verify_defining_identity(d, Vector::basis(g), sub.phi, sub.h, t)) {
            r.status = Status::Fail;
            r.counterexample = "generator " + label + ": defining identity fails";
        }
    }
    if (r.status == Status::Pass && truncated) r.status = Status::Truncated;
    r.details.push_back("conventions: " + to_string(conv));
    r.seconds = since(t0);
    return r;
}

Report check_homomorphism(const Decomposition& d, const HRepresentation& rep, Realization kind,
                          std::optional<unsigned> truncation) {
    const auto t0 = Clock::now();
    const auto& alg = d.algebra();
    const bool coinduced = kind == Realization::Coinduced;
    Report r{coinduced ? "homomorphism-coinduced" : "homomorphism-induced", alg.name(), Status::Pass, {}, {}, 0};

    const unsigned l = static_cast<unsigned>(d.depth().value_or(0));
    unsigned t;
    if (truncation) t = *truncation;
    else if (!coinduced) t = 6;
    else if (alg.graded()) t = l + static_cast<unsigned>(std::max(0, alg.max_degree()));
    else throw std::invalid_argument("an explicit truncation is required for ungraded algebras");

    std::vector<DiffOperator> ops;
    bool exact = true;
    for (std::uint32_t g = 0; g < alg.dim(); ++g) {
        // induced: one degree of headroom for the P_i raising step, and the full
        // series when it is known to terminate
        unsigned tg = t;
        if (!coinduced) tg = std::max(t + 1, alg.graded() ? l + std::max(0, alg.max_degree()) : 0u);
        auto ph = engine(d, g, tg);
        exact &= ph.exact;
        ops.push_back(coinduced ? coinduced_operator(d, ph.phi, ph.h, rep)
                                : induced_operator(d, alg.parity(g), ph.phi, ph.h, rep));
    }
    auto combination = [&](const Vector& v) {
        DiffOperator s(ops[0].side(), ops[0].var_parity(), ops[0].v_parity());
        for (const auto& [k, c] : v.entries()) {
            DiffOperator o = ops[k];
            o *= c;
            s += o;
        }
        return s;
    };

    std::vector<Monomial> window_monomials;
    std::vector<Parity> vp;
    for (std::uint32_t i = 0; i < d.num_vars(); ++i) vp.push_back(d.var(i).parity);
    if (!coinduced) {
        const unsigned w = t > l ? t - l : 0;
        window_monomials = monomials_up_to(vp, w);
        r.details.push_back(std::string(exact ? "operators compared exactly; " : "") +
                            "induced action checked on monomials of degree <= " + std::to_string(w));
    } else if (!exact) {
        r.details.push_back("operators truncated at X-degree " + std::to_string(t) +
                            "; compared up to X-degree " + std::to_string(t - 1));
    }

    std::size_t pairs = 0;
    for (std::uint32_t a = 0; a < alg.dim() && r.status == Status::Pass; ++a) {
        for (std::uint32_t b = 0; b < alg.dim() && r.status == Status::Pass; ++b) {
            ++pairs;
            const std::string pair = "[" + alg.element(a).label + ", " + alg.element(b).label + "]";
            const DiffOperator rhs = combination(alg.bracket_basis(a, b));
            if (coinduced || exact) {
                DiffOperator lhs = supercommutator(ops[a], ops[b]);
                DiffOperator want = rhs;
                if (!exact) {
                    // coinduced only: induced operators are compared exactly or not at all
                    lhs = window(lhs, t - 1);
                    want = window(want, t - 1);
                }
                if (!(lhs == want)) {
                    r.status = Status::Fail;
                    r.counterexample = pair + ": " + op_difference(lhs, want, rep.param_names());
                }
                if (coinduced || r.status != Status::Pass) continue;
            }
            const bool both_odd = is_odd(alg.parity(a)) && is_odd(alg.parity(b));
            for (const auto& m : window_monomials) {
                for (std::uint32_t s = 0; s < rep.dim(); ++s) {
                    ModuleElement e;
                    e.add(m, s, LambdaPoly::constant(1));
                    ModuleElement lhs = ops[a].apply(ops[b].apply(e));
                    ModuleElement ba = ops[b].apply(ops[a].apply(e));
                    if (!both_odd) ba *= Scalar(-1);
                    lhs += ba;
                    if (!(lhs == rhs.apply(e))) {
                        r.status = Status::Fail;
                        r.counterexample = pair + " on basis monomial of degree " + std::to_string(m.degree()) +
                                           " (V index " + std::to_string(s) + ")";
                        break;
                    }
                }
                if (r.status != Status::Pass) break;
            }
        }
    }
    if (coinduced && r.status == Status::Pass) {
        for (std::uint32_t g = 0; g < alg.dim(); ++g)
            if (ops[g].order() > 1) {
                r.status = Status::Fail;
                r.counterexample = "T(" + alg.element(g).label + ") has order " + std::to_string(ops[g].order());
            }
    }
    r.details.push_back(std::to_string(pairs) + " basis pairs, dim V = " + std::to_string(rep.dim()));
    r.seconds = since(t0);
    return r;
}

Report check_degree_bound(const Decomposition& d, std::optional<int> attained_degree,
                          std::optional<unsigned> attained_value) {
    const auto t0 = Clock::now();
    const auto& alg = d.algebra();
    Report r{"degree-bound", alg.name(), Status::Pass, {}, {}, 0};
    if (!alg.graded() || !d.is_triangular())
        throw std::invalid_argument("degree bound needs a graded algebra with its triangular decomposition");
    const int l = alg.depth();
    std::map<int, unsigned> reached;
    for (std::uint32_t g = 0; g < alg.dim(); ++g) {
        const int deg = *alg.element(g).degree;
        const unsigned bound = static_cast<unsigned>(std::max(0, l + deg));
        // one extra degree so that an excess would be visible
        auto ph = phi_h_subalgebra(d, Vector::basis(g), bound + 1);
        const unsigned got = std::max(ph.phi.degree(), ph.h.degree());
        reached[deg] = std::max(reached[deg], got);
        if (got > bound || !ph.exact) {
            r.status = Status::Fail;
            r.counterexample = "generator " + alg.element(g).label + " of degree " + std::to_string(deg) +
                               ": X-degree " + std::to_string(got) + " > l + d = " + std::to_string(bound);
            break;
        }
    }
    for (const auto& [deg, got] : reached)
        r.details.push_back("degree " + std::to_string(deg) + ": max X-degree " + std::to_string(got) +
                            " (bound " + std::to_string(std::max(0, l + deg)) + ")");
    if (r.status == Status::Pass && attained_degree && attained_value) {
        const unsigned got = reached.count(*attained_degree) ? reached[*attained_degree] : 0;
        if (got != *attained_value) {
            r.status = Status::Fail;
            r.counterexample = "expected max X-degree " + std::to_string(*attained_value) + " on g_" +
                               std::to_string(*attained_degree) + ", computed " + std::to_string(got);
        }
    }
    r.seconds = since(t0);
    return r;
}

StatsSummary compute_statistics(const Decomposition& d, unsigned workers, int generator_degree,
                                const PathConventions& conv) {
    StatsSummary s;
    s.subject = d.algebra().name();
    s.generator_degree = generator_degree;
    const auto gens = generators_of_degree(d, generator_degree);
    ActionGraph graph(d);
    PathIntegralOptions opts;
    opts.conventions = conv;
    const auto results = path_integrals(graph, gens, opts, workers);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& st = results[i].stats;
        s.per_generator.push_back({d.algebra().element(gens[i]).label, st});
        s.max.paths = std::max(s.max.paths, st.paths);
        s.max.terms = std::max(s.max.terms, st.terms);
        s.max.monomials = std::max(s.max.monomials, st.monomials);
        s.max.component_monomials = std::max(s.max.component_monomials, st.component_monomials);
        s.max.max_degree = std::max(s.max.max_degree, st.max_degree);
    }
    return s;
}

std::string format_statistics(const StatsSummary& s) {
    std::ostringstream os;
    os << "statistics " << s.subject << " (generators of degree " << s.generator_degree << ": "
       << s.per_generator.size() << ")\n";
    for (const auto& g : s.per_generator)
        os << "  " << g.generator << ": paths " << g.stats.paths << ", terms " << g.stats.terms << ", monomials "
           << g.stats.monomials << ", per-component " << g.stats.component_monomials << ", degree "
           << g.stats.max_degree << "\n";
    os << "longest path count: " << s.max.paths << "\n";
    os << "max reduced monomial count: " << s.max.terms << "\n";
    os << "max distinct monomials: " << s.max.monomials << "\n";
    os << "max per-component monomials: " << s.max.component_monomials << "\n";
    os << "max degree: " << s.max.max_degree << "\n";
    return os.str();
}

Report check_statistics(const StatsSummary& s, const StatsExpectation& expect) {
    Report r{"statistics", s.subject, Status::Pass, {}, {}, 0};
    std::vector<std::string> hard, soft;
    if (expect.max_degree && *expect.max_degree != s.max.max_degree)
        hard.push_back("max degree " + std::to_string(s.max.max_degree) + " (expected " +
                       std::to_string(*expect.max_degree) + ")");
    if (expect.paths && *expect.paths != s.max.paths)
        soft.push_back("longest path count " + std::to_string(s.max.paths) + " (expected " +
                       std::to_string(*expect.paths) + ")");
    if (expect.monomials && *expect.monomials != s.max.terms)
        soft.push_back("max reduced monomial count " + std::to_string(s.max.terms) + " (expected " +
                       std::to_string(*expect.monomials) + ")");
    r.details.push_back("paths " + std::to_string(s.max.paths) + ", monomials " + std::to_string(s.max.terms) +
                        ", degree " + std::to_string(s.max.max_degree));
    auto join = [](const std::vector<std::string>& v) {
        std::string out;
        for (const auto& x : v) out += (out.empty() ? "" : "; ") + x;
        return out;
    };
    if (!hard.empty() || (!soft.empty() && !expect.soft_counts_warn)) {
        r.status = Status::Fail;
        auto all = hard;
        all.insert(all.end(), soft.begin(), soft.end());
        r.counterexample = join(all);
    } else if (!soft.empty()) {
        r.status = Status::Warn;
        r.details.push_back("soft mismatch: " + join(soft));
    }
    return r;
}

Report check_duality(const Decomposition& d, const HRepresentation& rep, unsigned truncation, bool flip_sign) {
    const auto t0 = Clock::now();
    const auto& alg = d.algebra();
    Report r{"duality", alg.name(), Status::Pass, {}, {}, 0};
    const HRepresentation dual = rep.dual();
    std::vector<DiffOperator> t_ops, i_ops;
    const unsigned l = static_cast<unsigned>(d.depth().value_or(0));
    for (std::uint32_t g = 0; g < alg.dim(); ++g) {
        // pairings of degree <= truncation need series terms up to that degree plus one
        unsigned tg = truncation + 1;
        if (alg.graded()) tg = std::max<unsigned>(tg, l + std::max(0, *alg.element(g).degree));
        auto ph = engine(d, g, tg);
        t_ops.push_back(coinduced_operator(d, ph.phi, ph.h, dual));
        i_ops.push_back(induced_operator(d, alg.parity(g), ph.phi, ph.h, rep));
    }
    if (auto f = pair_duality_check(d, t_ops, i_ops, rep, truncation, flip_sign)) {
        r.status = Status::Fail;
        r.counterexample = "generator " + alg.element(f->generator).label + ", f degree " +
                           std::to_string(f->f_monomial.degree()) + " (V* index " + std::to_string(f->f_index) +
                           "), m degree " + std::to_string(f->m_monomial.degree()) + " (V index " +
                           std::to_string(f->m_index) + "): " + f->lhs + " vs " + f->rhs;
    }
    r.details.push_back("monomials up to degree " + std::to_string(truncation) +
                        (flip_sign ? ", contragredient sign flipped" : ""));
    r.seconds = since(t0);
    return r;
}

} // namespace coindiff
