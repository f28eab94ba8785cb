#pragma once

#include "coindiff/superpoly.hpp"
#include "coindiff/vector.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coindiff {

struct BasisElement {
    std::string label;
    Parity parity = Parity::Even;
    std::optional<int> degree;
};

/// One structure-constant entry [e_left, e_right] = value.
struct BracketEntry {
    std::uint32_t left;
    std::uint32_t right;
    Vector value;
};

/// A violated axiom, with both sides of the broken identity rendered as text.
struct Violation {
    enum class Kind { Antisymmetry, Jacobi, Parity, Grading, Closure, Representation };
    Kind kind;
    std::vector<std::uint32_t> indices;
    std::string lhs;
    std::string rhs;
    std::string message;
};

const char* to_string(Violation::Kind k);

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, ValidationReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Finite-dimensional Lie superalgebra with a homogeneous basis and optional
/// Z-grading. Immutable after construction.
class LieSuperAlgebra {
public:
    /// Builds from basis data and bracket entries. An entry for (i, j) with no
    /// entry for (j, i) also defines [e_j, e_i] by super-antisymmetry; entries
    /// given for both orders are stored verbatim (validate() checks them).
    /// Does not validate.
    LieSuperAlgebra(std::string name, std::vector<BasisElement> basis,
                    const std::vector<BracketEntry>& brackets);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(std::uint32_t i) const { return basis_.at(i); }
    Parity parity(std::uint32_t i) const { return basis_[i].parity; }
    bool graded() const { return graded_; }
    std::optional<std::uint32_t> index_of(const std::string& label) const;
    std::uint32_t require_index(const std::string& label) const;

    /// [e_i, e_j]
    const Vector& bracket_basis(std::uint32_t i, std::uint32_t j) const { return table_[i * dim() + j]; }
    Vector bracket(const Vector& a, const Vector& b) const;

    /// Depth l: largest magnitude of a negative degree (0 if none).
    int depth() const;
    /// Largest degree present.
    int max_degree() const;

    /// Stored entries with i <= j (the canonical serialization set).
    std::vector<BracketEntry> canonical_brackets() const;

    std::string format(const Vector& v) const;

    bool is_abelian() const;

private:
    std::string name_;
    std::vector<BasisElement> basis_;
    std::vector<Vector> table_;
    std::map<std::string, std::uint32_t> by_label_;
    bool graded_ = false;
};

/// Exhaustive super-antisymmetry, super-Jacobi, parity and grading checks.
/// Stops after max_violations.
ValidationReport validate(const LieSuperAlgebra& alg, std::size_t max_violations = 16);

/// gl(n) in matrix units E_ab, graded by b - a.
LieSuperAlgebra build_gl(unsigned n);

enum class Family { A, D, E };
Family parse_family(char c);
char to_char(Family f);

std::vector<std::vector<int>> cartan_matrix(Family family, unsigned rank);

/// Positive roots in simple-root coordinates, sorted by height then
/// coordinates.
std::vector<std::vector<int>> positive_roots(Family family, unsigned rank);

/// Chevalley basis {e_a, h_i, f_a} of a simply-laced simple Lie algebra with
/// the principal grading by root height. Throws std::domain_error on an
/// invalid rank.
LieSuperAlgebra build_simply_laced(Family family, unsigned rank);

/// Checks the algebra and throws ValidationError if any axiom fails.
LieSuperAlgebra validated(LieSuperAlgebra alg);

} // namespace coindiff
