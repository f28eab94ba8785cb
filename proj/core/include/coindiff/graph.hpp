#pragma once

#include "coindiff/conventions.hpp"
#include "coindiff/series.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace coindiff {

/// Edge s -> t labelled by P_i with weight c_{is}^t, the coefficient of e_t in
/// [P_i, e_s].
struct Edge {
    std::uint32_t source;
    std::uint32_t target;
    std::uint32_t label; // variable index i
    Scalar weight;
};

/// Action graph of ad(g_-) on g, in the adapted basis.
class ActionGraph {
public:
    explicit ActionGraph(const Decomposition& d);

    const Decomposition& decomposition() const { return *d_; }
    std::size_t num_vertices() const { return out_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    /// Outgoing edge indices of a vertex, ordered by (label, target).
    const std::vector<std::uint32_t>& out(std::uint32_t v) const { return out_[v]; }
    bool integral_weights() const { return integral_; }

    bool acyclic() const { return !cycle_.has_value(); }
    /// A cycle as a vertex sequence (first vertex repeated at the end).
    const std::optional<std::vector<std::uint32_t>>& cycle() const { return cycle_; }

    /// Number of paths from each vertex, including the trivial one (DAG only).
    std::vector<Integer> path_counts() const;

private:
    const Decomposition* d_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> out_;
    std::optional<std::vector<std::uint32_t>> cycle_;
    bool integral_ = true;
};

ActionGraph build_action_graph(const Decomposition& d);

class CycleError : public std::runtime_error {
public:
    CycleError(const std::string& what, std::vector<std::uint32_t> cycle)
        : std::runtime_error(what), cycle_(std::move(cycle)) {}
    const std::vector<std::uint32_t>& cycle() const { return cycle_; }

private:
    std::vector<std::uint32_t> cycle_;
};

/// Streaming depth-first enumeration of the paths starting at a vertex. The
/// first path is the trivial one; order is lexicographic in edge order.
class PathCursor {
public:
    /// Without max_length the graph must be acyclic (CycleError otherwise).
    PathCursor(const ActionGraph& g, std::uint32_t source, std::optional<unsigned> max_length = {});

    /// Advances to the next path; false when exhausted.
    bool next();

    std::uint32_t source() const { return source_; }
    /// Edge indices of the current path.
    const std::vector<std::uint32_t>& edges() const { return path_; }
    unsigned length() const { return static_cast<unsigned>(path_.size()); }
    std::uint32_t terminal() const;
    /// Some path was cut off at max_length.
    bool truncated() const { return truncated_; }

private:
    const ActionGraph* g_;
    std::uint32_t source_;
    std::optional<unsigned> max_length_;
    std::vector<std::uint32_t> path_;
    std::vector<std::uint32_t> pos_; // next out-edge position per depth
    bool started_ = false;
    bool truncated_ = false;
};

/// The index k fed into c(k, n), for a path given by its vertex sequence.
int k_of_path(const Decomposition& d, std::span<const std::uint32_t> vertices,
              const PathConventions& conv = kPathConventions);

/// c(k, n) extended by c(k, n) = 0 for k > n and c(k, n) = c(0, n) for k < 0.
Scalar path_coefficient(int k, unsigned n, BernoulliSign sign);

struct PathStats {
    std::uint64_t paths = 0;
    /// Nonzero (monomial, basis component) pairs in A + B after cancellation
    /// (the "reduced monomial count").
    std::size_t terms = 0;
    std::size_t monomials = 0; // distinct monomials in A + B
    /// Largest number of monomials in a single coefficient polynomial
    /// phi^i(X) or h^j(X).
    std::size_t component_monomials = 0;
    unsigned max_degree = 0;
};

struct PathMeasureResult {
    GPoly a; // S^* (x) g_-
    GPoly b; // S^* (x) h
    PathStats stats;
    bool truncated = false;
};

struct PathIntegralOptions {
    /// Drop paths longer than this; required on cyclic graphs.
    std::optional<unsigned> truncation;
    PathConventions conventions = kPathConventions;
};

/// Sum over paths p from M of K(p) mu(p) T(p), split into (A(M), B(M)).
/// Only valid when g_- is a subalgebra (MisuseError otherwise).
PathMeasureResult path_integral(const ActionGraph& g, std::uint32_t source,
                                const PathIntegralOptions& opts = {});

/// Runs path_integral for several sources on a pool of workers; the result
/// order follows the input order and does not depend on the worker count.
std::vector<PathMeasureResult> path_integrals(const ActionGraph& g,
                                              std::span<const std::uint32_t> sources,
                                              const PathIntegralOptions& opts, unsigned workers);

struct CalibrationResult {
    std::vector<PathConventions> tried;
    std::vector<PathConventions> matching;
};

/// Tries every combination of path conventions against the series engine on
/// the given triangular decompositions (all basis elements as sources).
CalibrationResult calibrate(std::span<const Decomposition* const> decomps);

/// All 16 combinations of the convention switches.
std::vector<PathConventions> all_path_conventions();

} // namespace coindiff
