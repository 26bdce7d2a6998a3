#pragma once

#include "mahler/algebra/form.hpp"
#include "mahler/evaluator/evaluate.hpp"
#include "mahler/liouville/exponents.hpp"

#include <optional>

namespace mahler {

/// xi = sum_{n >= 0} beta^{u_n} from `terms` summands plus the tail bound
/// |beta|^{u_terms} / (1 - |beta|), |beta| taken at the upper end.
///
/// Throws BetaNotContracting unless the upper end of |beta| is below 1.
ValueEnclosure xi_value(const Enclosure& beta, const ExponentSeq& u, std::size_t terms, bool certified,
                        std::optional<long> precision = std::nullopt);
ValueEnclosure xi_value(const ValueEnclosure& beta, const ExponentSeq& u, std::size_t terms,
                        std::optional<long> precision = std::nullopt);
ValueEnclosure xi_value(const Rat& beta, const ExponentSeq& u, std::size_t terms,
                        std::optional<long> precision = std::nullopt);

/// Exact xi_N = sum_{n < terms} beta^{u_n}; exponents must fit in 32 bits.
Rat xi_partial_sum(const Rat& beta, const ExponentSeq& u, std::size_t terms);

/// Q_N(X_0, X_1) = sum_{n <= N} X_0^{u_n} X_1^{u_N - u_n}.
/// Throws InvalidInput when u_N does not fit in a machine exponent.
AuxForm qn_form(const ExponentSeq& u, std::size_t N);

/// P_N(X_1, ..., X_r) = P(X_1 X_r^{u_N}, ..., X_{r-2} X_r^{u_N}, Q_N(X_{r-1}, X_r))
/// for P homogeneous in r - 1 variables (the last one standing for xi).
///
/// Throws ArityMismatch unless Q_N is binary, InvalidInput unless P is
/// homogeneous.
AuxForm pn_build(const AuxForm& P, const AuxForm& QN, const Int& uN);

/// H^{-c1 d^tau} * exp(-c1 d^{2 tau + 2}).
struct BoundProfile {
    Rat c1;
    long tau = 1;
};

/// Natural log of the bound, -c1 d^tau log H - c1 d^{2 tau + 2}.
Enclosure bound_profile_log(const BoundProfile& bp, long d, const Int& H, long precision = Enclosure::kDefaultPrecision);
Enclosure bound_profile_eval(const BoundProfile& bp, long d, const Int& H, long precision = Enclosure::kDefaultPrecision);

}  // namespace mahler
