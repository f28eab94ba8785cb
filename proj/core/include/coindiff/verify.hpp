#pragma once

#include "coindiff/graph.hpp"
#include "coindiff/realize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coindiff {

enum class Status { Pass, Warn, Fail, Truncated };
const char* to_string(Status s);

struct Report {
    std::string check;
    std::string subject;
    Status status = Status::Pass;
    /// First concrete failure (generator, pair, monomial, ...); empty on pass.
    std::string counterexample;
    std::vector<std::string> details;
    double seconds = 0;

    bool ok() const { return status == Status::Pass || status == Status::Warn; }
};

/// One line per report plus indented details. Timing is omitted when
/// with_timing is false (deterministic output).
std::string to_text(const std::vector<Report>& reports, bool with_timing = true);
std::string to_json(const std::vector<Report>& reports, bool with_timing = true);

/// Basis indices of the given degree (adapted basis).
std::vector<std::uint32_t> generators_of_degree(const Decomposition& d, int degree);

/// Graph path integral vs closed-form series (and general vs subalgebra
/// engine) per basis element, exact. On non-subalgebra decompositions only the
/// general engine exists; it is checked by substitution into the defining
/// identity instead.
Report check_engine_equivalence(const Decomposition& d, std::optional<unsigned> truncation = {},
                                const PathConventions& conv = kPathConventions);

/// Which realization to sweep.
enum class Realization { Coinduced, Induced };

/// [R(a), R(b)] = R([a, b]) on all basis pairs. Coinduced: as operators.
/// Induced: on basis monomials of degree <= truncation - l (l = depth, or 0),
/// and additionally as operators when the series terminate.
/// truncation defaults to l + max degree for coinduced, 6 for induced.
Report check_homomorphism(const Decomposition& d, const HRepresentation& rep, Realization kind,
                          std::optional<unsigned> truncation = {});

/// Max X-degree of phi, h for g in g_d is <= l + d (graded triangular only).
/// expect_attained additionally demands that some generator of degree
/// attained_degree reaches attained_value.
Report check_degree_bound(const Decomposition& d, std::optional<int> attained_degree = {},
                          std::optional<unsigned> attained_value = {});

struct StatsExpectation {
    std::optional<std::uint64_t> paths;     // soft
    std::optional<std::size_t> monomials;   // soft
    std::optional<unsigned> max_degree;     // hard
    /// Mismatching soft values downgrade to Warn instead of Fail.
    bool soft_counts_warn = true;
};

struct GeneratorStats {
    std::string generator;
    PathStats stats;
};

struct StatsSummary {
    std::string subject;
    int generator_degree = 1;
    std::vector<GeneratorStats> per_generator;
    PathStats max; // componentwise maximum
};

/// Path statistics over the generators of the given degree (default g_1).
StatsSummary compute_statistics(const Decomposition& d, unsigned workers = 1, int generator_degree = 1,
                                const PathConventions& conv = kPathConventions);
/// Deterministic text block (no timing).
std::string format_statistics(const StatsSummary& s);

Report check_statistics(const StatsSummary& s, const StatsExpectation& expect);

/// <T_{V*}(g) f, m> = -(-1)^{|g||f|} <f, I_V(g) m> up to the truncation.
Report check_duality(const Decomposition& d, const HRepresentation& rep, unsigned truncation,
                     bool flip_sign = false);

} // namespace coindiff
