#pragma once

#include "coindiff/io.hpp"
#include "coindiff/verify.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coindiff {

enum ExitCode : int {
    kExitOk = 0,
    kExitError = 1,
    kExitConfig = 2,
    kExitValidation = 3,
    kExitTruncated = 4,
    kExitVerifyFailed = 5,
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One reproducible run. String fields use the same syntax as the CLI flags.
struct JobConfig {
    /// "A:2", "D:4", "E:6", "gl:3" or "custom:<path to structure file>".
    std::string algebra;
    /// "triangular" or "minus:<v>,<v>,...;h:<label>,..." with vectors such as
    /// "f_10+2*f_01".
    std::string decomposition = "triangular";
    /// "coinduced" or "induced".
    std::string module = "coinduced";
    /// "character", "adjoint" or a representation file path.
    std::string representation = "character";
    /// Character weights: "symbolic" or a comma list of rationals.
    std::string weights = "symbolic";
    /// "series", "graph" or "both".
    std::string engine = "series";
    std::optional<unsigned> truncation;
    /// "tex", "structured" or "stats-only".
    std::string format = "tex";
    /// Output file; empty writes to the returned text only.
    std::string out;
    /// Structure-constant cache directory; empty disables caching.
    std::string cache_dir;
    /// Any of "engines", "homomorphism", "degree", "duality", "all".
    std::vector<std::string> verify;
    bool stats = false;
    int stats_degree = 1;
    /// "calibrated" or "face-value" (path conventions; diagnostics only).
    std::string conventions = "calibrated";
    unsigned workers = 1;
    /// Accept non-terminating series cut at the truncation (else exit 4).
    bool allow_truncated = false;
};

/// JSON object with the JobConfig field names (cache_dir, stats_degree, ...).
/// Unknown keys are rejected.
JobConfig parse_config(std::string_view json_text);

struct JobResult {
    int exit_code = kExitOk;
    /// Primary artifact (also written to config.out when set).
    std::string output;
    /// Diagnostics and verification reports, one entry per line.
    std::vector<std::string> messages;
    std::vector<Report> reports;
};

/// Never throws: every failure maps to an exit code with a message.
JobResult run(const JobConfig& config);

/// "f_10+2*f_01-1/2*e_1" in the given algebra.
Vector parse_vector(const LieSuperAlgebra& alg, const std::string& text);

} // namespace coindiff
