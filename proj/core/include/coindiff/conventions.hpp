#pragma once

#include "coindiff/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coindiff {

/// How the index k fed into c(k, n) is derived from a path.
enum class KIndex : std::uint8_t {
    /// k = length of the longest prefix ending in h.
    LongestHPrefix,
    /// As LongestHPrefix, plus one when the path terminates in g_-
    /// (equivalently: length of the shortest prefix ending in g_-).
    HPrefixPlusTerminalStep,
};

const char* to_string(KIndex k);

/// The sign/ordering switches of the path-integral weight
/// K(p) = k_sign * c(kappa(p), length(p)).
struct PathConventions {
    int k_sign = -1;
    KIndex k_index = KIndex::LongestHPrefix;
    /// Value of the longest-h-prefix length when no prefix ends in h
    /// (source vertex in g_-): 0 or -1.
    int no_h_prefix = 0;
    BernoulliSign bernoulli = BernoulliSign::Minus;

    friend bool operator==(const PathConventions&, const PathConventions&) = default;
};

std::string to_string(const PathConventions& c);

/// Literal reading of the path-integral weight, before calibration.
inline constexpr PathConventions kFaceValueConventions{-1, KIndex::LongestHPrefix, 0,
                                                       BernoulliSign::Plus};

/// Conventions fixed by calibrating the graph engine against the closed-form
/// series engine (see calibrate() in graph.hpp and docs/CONVENTIONS.md).
inline constexpr PathConventions kPathConventions{+1, KIndex::HPrefixPlusTerminalStep, -1,
                                                  BernoulliSign::Minus};

/// Sign placed on the Chevalley root-vector brackets: N_{a,b} = eps(a,b) with
/// eps bimultiplicative, eps(a_i,a_i) = -1, eps(a_i,a_j) = -1 for linked
/// i < j, +1 otherwise.
inline constexpr const char* kChevalleyCocycle = "eps(a_i,a_j) = -1 if i == j or (i < j and linked)";

/// Operator-form signs for odd variables (all trivially satisfied for purely
/// even g_-). Fixed by the homomorphism and duality sweeps on gl(m|n).
struct OperatorConventions {
    /// T(g) carries (-1)^{|X^i|} in front of phi^i(-X) d/dX^i.
    bool coinduced_odd_sign = false;
    /// I(g) substitutes X^i -> (-1)^{|X^i|} d/dP_i (instead of plain d/dP_i).
    bool induced_signed_derivative = true;
    /// Duality pairing twist (-1)^{e(L)} on P^L, e(L) = number of even factors
    /// (instead of (-1)^{deg L}).
    bool pairing_even_twist = true;

    friend bool operator==(const OperatorConventions&, const OperatorConventions&) = default;
};

/// As printed.
inline constexpr OperatorConventions kPrintedOperatorConventions{true, false, false};
inline constexpr OperatorConventions kOperatorConventions{};

struct ConventionEntry {
    std::string name;
    std::string value;
    std::string pinning_test;
    std::string disambiguates;
};

/// Convention entries generated from the constants above.
std::vector<ConventionEntry> convention_entries();

/// Markdown table of the given entries; an empty list renders an explicit
/// "uncalibrated" banner.
std::string render_ledger(const std::vector<ConventionEntry>& entries);
std::string render_ledger();

} // namespace coindiff
