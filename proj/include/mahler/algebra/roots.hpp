#pragma once

#include "mahler/algebra/enclosure.hpp"
#include "mahler/algebra/form.hpp"
#include "mahler/algebra/poly.hpp"

#include <vector>

namespace mahler {

/// Positive r with |beta| >= r for every nonzero complex root beta of p.
///
/// Strips z^val(p) and applies the Cauchy bound to the reversed polynomial.
/// Returns 1 when p has no nonzero root. Throws std::domain_error for p = 0.
Rat root_lower_bound(const Poly& p);

/// Projective root (x0 : x1) of a binary form, either (1 : x) or (0 : 1).
struct ProjectiveRoot {
    ComplexEnclosure x0, x1;
    int multiplicity = 1;
    bool at_infinity() const { return x0.re.hi().is_zero() && x0.re.lo().is_zero(); }
};

/// Enclosures of all projective roots of a nonzero binary form F(X_0, X_1)
/// with z-free coefficients. Distinct roots get pairwise disjoint
/// enclosures, each at most 2^-accuracy_bits wide in both coordinates.
///
/// Throws InvalidInput for a form that is not binary or depends on z,
/// ZeroForm for F = 0, PrecisionExhausted if certification fails.
std::vector<ProjectiveRoot> binary_form_roots(const AuxForm& f, long accuracy_bits = 53);

/// Square-free decomposition f = c * prod g_i^i (Yun); entry i-1 holds g_i.
std::vector<Poly> squarefree_decomposition(const Poly& f);

}  // namespace mahler
