#pragma once

#include "coindiff/liealg.hpp"
#include "coindiff/realize.hpp"

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coindiff {

/// Malformed input text; carries the 1-based line (0 when not line-bound).
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// ----------------------------------------------------------- structure text

inline constexpr int kStructureFormatVersion = 1;

/// Versioned text form of a Lie superalgebra (basis table plus the canonical
/// bracket entries). Deterministic: equal algebras give equal bytes.
std::string write_structure(const LieSuperAlgebra& alg);
/// Parses without validating.
LieSuperAlgebra parse_structure(std::string_view text);
/// Reads a file, parses and validates (ValidationError on a broken axiom).
LieSuperAlgebra load_custom(const std::filesystem::path& path);

/// Custom h-representation file: dimension, parities, rho matrix entries per
/// h basis label. Validated against the decomposition.
HRepresentation parse_representation(std::string_view text, const Decomposition& d);
HRepresentation load_representation(const std::filesystem::path& path, const Decomposition& d);

/// On-disk cache of built structure constants, keyed by (family, rank,
/// format version). Entries use the structure text format.
class StructureCache {
public:
    explicit StructureCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// "E6" -> <dir>/E6.v1.lsa
    std::filesystem::path entry_path(const std::string& key) const;
    /// Loads the entry if present and valid; otherwise builds, stores and
    /// returns. Corrupt entries are rebuilt and a warning is appended.
    LieSuperAlgebra load_or_build(const std::string& key, const std::function<LieSuperAlgebra()>& build,
                                  std::vector<std::string>* warnings = nullptr);
    bool last_was_hit() const { return last_hit_; }

private:
    std::filesystem::path dir_;
    bool last_hit_ = false;
};

std::string cache_key(Family family, unsigned rank);

// ------------------------------------------------------------ operator output

struct NamedOperator {
    std::string generator;
    DiffOperator op;
};

/// Operators of one realization plus the naming data needed to print them.
struct OperatorSet {
    DiffOperator::Side side = DiffOperator::Side::Coinduced;
    /// Labels of the g_- basis vectors P_i, one per variable.
    std::vector<std::string> variables;
    std::vector<Parity> var_parity;
    std::vector<Parity> v_parity;
    std::vector<std::string> params;
    std::vector<NamedOperator> operators;
};

/// Right-hand side in the TeX schema, e.g. "-X^{2}\partial_{X} - \lambda X".
std::string emit_tex(const DiffOperator& op, const std::vector<std::string>& params);
/// Full document: one display equation per generator.
std::string emit_tex(const OperatorSet& set);

/// JSON schema, exact and round-trippable.
std::string emit_structured(const OperatorSet& set);
OperatorSet parse_structured(std::string_view text);

} // namespace coindiff
