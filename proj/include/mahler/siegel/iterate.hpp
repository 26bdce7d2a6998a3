#pragma once

#include "mahler/algebra/form.hpp"
#include "mahler/mahler/equation.hpp"
#include "mahler/mahler/system.hpp"

#include <optional>

namespace mahler {

/// Equation together with its augmented system B (Y = (1, f, f(z^q), ...))
/// and the monic polynomial a clearing the denominators of B.
struct IterationContext {
    MahlerEquation eq;
    MahlerSystem B;
    Poly a;
};

IterationContext iteration_context(const MahlerEquation& eq);

/// k-fold application of R_{j+1}(z, X) = a(z)^N R_j(z^q, B(z) X).
///
/// Terms of X-degree D become a^{N-D} R(z^q, (aB) X), so the result is
/// polynomial in z. Throws ClearingFailure if aB is not polynomial and
/// InvalidInput if deg_X(R) > N.
AuxForm iterate_aux(const AuxForm& R, const MahlerSystem& B, const Poly& a, std::size_t N, std::size_t k);

/// a(z) a(z^q) ... a(z^{q^{k-1}}); 1 for k = 0.
Poly iterate_multiplier(const Poly& a, long q, std::size_t k);

struct IdentityCheck {
    bool holds = false;
    /// Lowest order at which the two sides differ.
    std::optional<std::size_t> first_mismatch;
};

/// Compares R_k(z, Y(z)) with a_k(z)^N R(z^{q^k}, Y(z^{q^k})) mod z^order.
IdentityCheck check_iterate_identity(const AuxForm& R, const AuxForm& Rk, const IterationContext& ctx, std::size_t N,
                                     std::size_t k, std::size_t order);

}  // namespace mahler
