#include "coindiff/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace coindiff {

ActionGraph::ActionGraph(const Decomposition& d) : d_(&d) {
    const auto& alg = d.algebra();
    const auto n = static_cast<std::uint32_t>(alg.dim());
    out_.resize(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        for (std::uint32_t i = 0; i < d.num_vars(); ++i) {
            for (const auto& [t, c] : alg.bracket_basis(d.minus_indices()[i], s).entries()) {
                out_[s].push_back(static_cast<std::uint32_t>(edges_.size()));
                edges_.push_back({s, t, i, c});
                if (c.get_den() != 1 || !c.get_num().fits_slong_p()) integral_ = false;
            }
        }
    }

    // iterative three-colour DFS for a cycle
    std::vector<std::uint8_t> colour(n, 0);
    std::vector<std::uint32_t> parent(n, 0);
    for (std::uint32_t root = 0; root < n && !cycle_; ++root) {
        if (colour[root]) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty() && !cycle_) {
            auto& [v, pos] = stack.back();
            if (pos == out_[v].size()) {
                colour[v] = 2;
                stack.pop_back();
                continue;
            }
            const std::uint32_t t = edges_[out_[v][pos++]].target;
            if (colour[t] == 1) {
                std::vector<std::uint32_t> cyc{t};
                for (std::uint32_t u = v; u != t; u = parent[u]) cyc.push_back(u);
                std::reverse(cyc.begin() + 1, cyc.end());
                cyc.push_back(t);
                cycle_ = std::move(cyc);
            } else if (colour[t] == 0) {
                colour[t] = 1;
                parent[t] = v;
                stack.push_back({t, 0});
            }
        }
    }
}

ActionGraph build_action_graph(const Decomposition& d) { return ActionGraph(d); }

std::vector<Integer> ActionGraph::path_counts() const {
    if (cycle_) throw CycleError("path counts are infinite on a cyclic graph", *cycle_);
    const auto n = out_.size();
    std::vector<Integer> count(n);
    std::vector<std::uint8_t> done(n, 0);
    for (std::uint32_t root = 0; root < n; ++root) {
        if (done[root]) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
        while (!stack.empty()) {
            auto& [v, pos] = stack.back();
            if (pos < out_[v].size()) {
                const auto t = edges_[out_[v][pos++]].target;
                if (!done[t]) stack.push_back({t, 0});
                continue;
            }
            Integer c = 1;
            for (auto e : out_[v]) c += count[edges_[e].target];
            count[v] = c;
            done[v] = 1;
            stack.pop_back();
        }
    }
    return count;
}

PathCursor::PathCursor(const ActionGraph& g, std::uint32_t source, std::optional<unsigned> max_length)
    : g_(&g), source_(source), max_length_(max_length) {
    if (!max_length && !g.acyclic()) {
        std::string names;
        for (auto v : *g.cycle()) names += (names.empty() ? "" : " -> ") + g.decomposition().algebra().element(v).label;
        throw CycleError("unbounded path enumeration on a cyclic graph; cycle: " + names, *g.cycle());
    }
}

std::uint32_t PathCursor::terminal() const {
    return path_.empty() ? source_ : g_->edges()[path_.back()].target;
}

bool PathCursor::next() {
    if (!started_) {
        started_ = true;
        pos_.assign(1, 0);
        return true;
    }
    while (!pos_.empty()) {
        const std::uint32_t v = terminal();
        const auto& out = g_->out(v);
        auto& pos = pos_.back();
        const bool room = !max_length_ || path_.size() < *max_length_;
        if (room && pos < out.size()) {
            path_.push_back(out[pos++]);
            pos_.push_back(0);
            return true;
        }
        if (!room && !out.empty()) truncated_ = true;
        pos_.pop_back();
        if (!path_.empty()) path_.pop_back();
    }
    return false;
}

int k_of_path(const Decomposition& d, std::span<const std::uint32_t> vertices, const PathConventions& conv) {
    int j = conv.no_h_prefix;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (d.in_h(vertices[i])) j = static_cast<int>(i);
    if (conv.k_index == KIndex::HPrefixPlusTerminalStep && d.in_minus(vertices.back())) ++j;
    return j;
}

Scalar path_coefficient(int k, unsigned n, BernoulliSign sign) {
    if (k > static_cast<int>(n)) return 0;
    return c_coeff(static_cast<unsigned>(std::max(k, 0)), n, sign);
}

namespace {

struct Overflow {};

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

// Exact integer arithmetic on machine words; throws Overflow when a value
// leaves the representable range.
struct FastNum {
    using W = long long;
    using Acc = Int128;
    static W weight(const Scalar& c) { return -c.get_num().get_si(); }
    static W one() { return 1; }
    static W mul(W a, W b) {
        W r;
        if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static void add(Acc& acc, W w, int sign) {
        if (__builtin_add_overflow(acc, static_cast<Acc>(sign) * w, &acc)) throw Overflow{};
    }
    static Scalar to_scalar(Acc a) {
        const bool neg = a < 0;
        UInt128 u = neg ? -static_cast<UInt128>(a) : static_cast<UInt128>(a);
        Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
        Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
        Integer r = (hi << 64) + lo;
        return Scalar(neg ? Integer(-r) : r);
    }
    static bool is_zero(Acc a) { return a == 0; }
};

struct ExactNum {
    using W = Scalar;
    using Acc = Scalar;
    static W weight(const Scalar& c) { return -c; }
    static W one() { return 1; }
    static W mul(const W& a, const W& b) { return a * b; }
    static void add(Acc& acc, const W& w, int sign) {
        if (sign > 0) acc += w;
        else acc -= w;
    }
    static Scalar to_scalar(const Acc& a) { return a; }
    static bool is_zero(const Acc& a) { return coindiff::is_zero(a); }
};

template <class Num>
PathMeasureResult integrate(const ActionGraph& g, std::uint32_t source, const PathIntegralOptions& opts) {
    const Decomposition& d = g.decomposition();
    const auto& conv = opts.conventions;
    const std::size_t nv = d.num_vars();
    if (nv > 0xffff) throw std::length_error("too many variables");
    if (!opts.truncation && !g.acyclic()) PathCursor(g, source); // throws CycleError

    std::vector<typename Num::W> weight;
    weight.reserve(g.num_edges());
    for (const auto& e : g.edges()) weight.push_back(Num::weight(e.weight));
    std::vector<std::uint32_t> odd_vars;
    for (std::uint32_t i = 0; i < nv; ++i)
        if (is_odd(d.var(i).parity)) odd_vars.push_back(i);

    // key layout: exponent bytes, terminal (4 bytes), kappa (4 bytes)
    std::string key(nv + 8, '\0');
    std::unordered_map<std::string, typename Num::Acc> acc;

    struct Frame {
        std::uint32_t vertex;
        std::uint32_t pos;
        int j;
        int sign;
        bool zero;
        bool incremented;
        std::uint32_t label;
    };
    std::vector<Frame> stack;
    std::vector<typename Num::W> wprod;
    PathMeasureResult result;

    auto contribute = [&](const Frame& f) {
        ++result.stats.paths;
        if (f.zero) return;
        int kappa = f.j;
        if (conv.k_index == KIndex::HPrefixPlusTerminalStep && d.in_minus(f.vertex)) ++kappa;
        std::memcpy(key.data() + nv, &f.vertex, 4);
        std::memcpy(key.data() + nv + 4, &kappa, 4);
        auto [it, inserted] = acc.try_emplace(key, typename Num::Acc{});
        Num::add(it->second, wprod.back(), f.sign);
    };

    stack.push_back({source, 0, d.in_h(source) ? 0 : conv.no_h_prefix, 1, false, false, 0});
    wprod.push_back(Num::one());
    contribute(stack.back());
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& out = g.out(f.vertex);
        const unsigned depth = static_cast<unsigned>(stack.size() - 1);
        const bool room = !opts.truncation || depth < *opts.truncation;
        if (room && f.pos < out.size()) {
            const std::uint32_t ei = out[f.pos++];
            const Edge& e = g.edges()[ei];
            Frame nf{e.target, 0, d.in_h(e.target) ? static_cast<int>(depth + 1) : f.j, f.sign, f.zero, false,
                     e.label};
            if (!nf.zero) {
                auto& ex = reinterpret_cast<std::uint8_t&>(key[e.label]);
                if (is_odd(d.var(e.label).parity)) {
                    if (ex) {
                        nf.zero = true;
                    } else {
                        // X^i moves left past the odd factors with larger index
                        for (auto o : odd_vars)
                            if (o > e.label && key[o]) nf.sign = -nf.sign;
                    }
                }
                if (!nf.zero) {
                    if (ex == 0xff) throw std::length_error("monomial exponent overflow");
                    ++ex;
                    nf.incremented = true;
                }
            }
            wprod.push_back(Num::mul(wprod.back(), weight[ei]));
            stack.push_back(nf);
            contribute(stack.back());
            continue;
        }
        if (!room && !out.empty()) result.truncated = true;
        if (f.incremented) --reinterpret_cast<std::uint8_t&>(key[f.label]);
        stack.pop_back();
        wprod.pop_back();
    }

    const auto t = opts.truncation;
    result.a = GPoly(t);
    result.b = GPoly(t);
    for (const auto& [k, w] : acc) {
        if (Num::is_zero(w)) continue;
        std::vector<Monomial::Factor> factors;
        unsigned n = 0;
        for (std::uint32_t i = 0; i < nv; ++i) {
            const auto ex = static_cast<std::uint8_t>(k[i]);
            if (!ex) continue;
            factors.push_back({i, ex, d.var(i).parity});
            n += ex;
        }
        std::uint32_t terminal;
        int kappa;
        std::memcpy(&terminal, k.data() + nv, 4);
        std::memcpy(&kappa, k.data() + nv + 4, 4);
        Scalar c = path_coefficient(kappa, n, conv.bernoulli) * Num::to_scalar(w);
        if (conv.k_sign < 0) c = -c;
        if (is_zero(c)) continue;
        (d.in_minus(terminal) ? result.a : result.b)
            .add_term(Monomial::from_factors(std::move(factors)), Vector::basis(terminal, c));
    }

    std::map<Monomial, bool> monomials;
    std::map<std::uint32_t, std::size_t> per_component;
    for (const GPoly* p : {&result.a, &result.b}) {
        for (const auto& [m, v] : p->terms()) {
            result.stats.terms += v.size();
            monomials[m] = true;
            for (const auto& [i, c] : v.entries()) ++per_component[i];
            result.stats.max_degree = std::max(result.stats.max_degree, m.degree());
        }
    }
    result.stats.monomials = monomials.size();
    for (const auto& [i, n] : per_component)
        result.stats.component_monomials = std::max(result.stats.component_monomials, n);
    return result;
}

} // namespace

PathMeasureResult path_integral(const ActionGraph& g, std::uint32_t source, const PathIntegralOptions& opts) {
    if (!g.decomposition().is_subalgebra())
        throw MisuseError("the path integral needs g_- to be a subalgebra; use the general series engine");
    if (g.integral_weights()) {
        try {
            return integrate<FastNum>(g, source, opts);
        } catch (const Overflow&) {
        }
    }
    return integrate<ExactNum>(g, source, opts);
}

std::vector<PathMeasureResult> path_integrals(const ActionGraph& g, std::span<const std::uint32_t> sources,
                                              const PathIntegralOptions& opts, unsigned workers) {
    std::vector<PathMeasureResult> results(sources.size());
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(sources.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < sources.size(); ++i) results[i] = path_integral(g, sources[i], opts);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < sources.size();) {
                try {
                    results[i] = path_integral(g, sources[i], opts);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

std::vector<PathConventions> all_path_conventions() {
    std::vector<PathConventions> all;
    for (int sign : {-1, 1})
        for (auto k : {KIndex::LongestHPrefix, KIndex::HPrefixPlusTerminalStep})
            for (int sentinel : {0, -1})
                for (auto b : {BernoulliSign::Minus, BernoulliSign::Plus}) all.push_back({sign, k, sentinel, b});
    return all;
}

CalibrationResult calibrate(std::span<const Decomposition* const> decomps) {
    CalibrationResult r;
    r.tried = all_path_conventions();
    struct Case {
        const Decomposition* d;
        ActionGraph g;
        unsigned truncation;
        std::vector<PhiH> oracle;
    };
    std::vector<Case> cases;
    for (const auto* d : decomps) {
        const auto dim = static_cast<std::uint32_t>(d->algebra().dim());
        std::vector<std::uint32_t> all(dim);
        for (std::uint32_t i = 0; i < dim; ++i) all[i] = i;
        const unsigned t = default_truncation(*d, all).value_or(dim);
        Case c{d, ActionGraph(*d), t, {}};
        for (auto m : all) c.oracle.push_back(phi_h_subalgebra(*d, Vector::basis(m), t));
        cases.push_back(std::move(c));
    }
    for (const auto& conv : r.tried) {
        bool ok = true;
        for (const auto& c : cases) {
            for (std::uint32_t m = 0; ok && m < c.oracle.size(); ++m) {
                auto res = path_integral(c.g, m, {c.truncation, conv});
                ok = res.a == c.oracle[m].phi && res.b == c.oracle[m].h;
            }
            if (!ok) break;
        }
        if (ok) r.matching.push_back(conv);
    }
    return r;
}

} // namespace coindiff
