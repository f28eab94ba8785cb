#pragma once

#include "coindiff/decomp.hpp"

#include <optional>
#include <span>
#include <stdexcept>

namespace coindiff {

/// g-valued truncated series: S(g_-)^* (x) g in the adapted basis.
using GPoly = SuperPoly<Vector>;

/// phi(X, g) P (components along g_-) and h(X, g) (components along h).
struct PhiH {
    GPoly phi;
    GPoly h;
    unsigned truncation = 0;
    /// No term at degree truncation + 1: the series stopped on its own.
    bool exact = false;
};

class MisuseError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// t = ad XP: X^I (x) w -> sum_i X^I X^i (x) [P_i, w].
GPoly ad_xp(const Decomposition& d, const GPoly& v);

/// e^{-ad XP} g up to the given X-degree.
GPoly exp_neg_ad(const Decomposition& d, const Vector& g, unsigned truncation);

/// Subalgebra case: h = Pi_h e^{-t} g, phi P = -t/(e^{-t}-1) Pi_- e^{-t} g.
/// Throws MisuseError when g_- is not a subalgebra.
PhiH phi_h_subalgebra(const Decomposition& d, const Vector& g, unsigned truncation);

/// General case: phi by Neumann inversion of Pi_- (e^{-t}-1)/t on S^* (x) g_-,
/// then h = Pi_h (e^{-t} g + (e^{-t}-1)/t phi P).
PhiH phi_h_general(const Decomposition& d, const Vector& g, unsigned truncation);

/// Checks phi P - t/(e^{-t}-1) h = -t/(e^{-t}-1) e^{-t} g up to the truncation.
bool verify_defining_identity(const Decomposition& d, const Vector& g, const GPoly& phi,
                              const GPoly& h, unsigned truncation);

/// l + max degree of the given generators (graded adapted algebra only).
std::optional<unsigned> default_truncation(const Decomposition& d,
                                           std::span<const std::uint32_t> generators);

} // namespace coindiff
