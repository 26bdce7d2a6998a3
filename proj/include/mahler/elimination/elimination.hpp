#pragma once

#include "mahler/algebra/enclosure.hpp"
#include "mahler/algebra/form.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

/// Projective point (omega_0 : ... : omega_m).
struct ProjPoint {
    std::vector<Enclosure> coords;
    /// Exact coordinates when the point is rational.
    std::optional<std::vector<Rat>> exact;

    static ProjPoint from_rats(std::vector<Rat> x, long precision = Enclosure::kDefaultPrecision);
    static ProjPoint from_enclosures(std::vector<Enclosure> x);

    /// Scaled so that the sup norm is 1 (exactly, for rational points).
    ProjPoint normalized() const;
    /// Sup norm max |omega_i|.
    Enclosure norm() const;
    std::string to_string() const;
};

struct PrincipalQuantities {
    long deg = 0;
    /// log H(P) + m^2 deg(P).
    Enclosure logH_upper;
    /// log(|P(omega)| |omega|^{-deg} (m+1)^{2 m deg}); empty when P(omega) = 0 exactly.
    std::optional<Enclosure> logAbs_upper;
};

/// Throws ZeroForm for P = 0, InvalidInput for forms that depend on z or are
/// not homogeneous, PrecisionExhausted if |P(omega)| cannot be separated
/// from zero on an inexact point.
PrincipalQuantities principal_quantities(const AuxForm& P, const ProjPoint& omega,
                                         long precision = Enclosure::kDefaultPrecision);

/// min over roots beta of F of |omega_0 beta_1 - omega_1 beta_0| / (|beta| |omega|)
/// with sup norms. Exactly [0, 0] when F(omega) = 0 for a rational omega.
Enclosure dist_p1(const AuxForm& F, const ProjPoint& omega, long accuracy_bits = 64);

enum class Verdict { True, Inconclusive, Violation };
std::string to_string(Verdict v);

/// deg(F) log dist(omega, F) <= logAbs_upper + 3 deg(F), the principal,
/// m = 1 consistency check. Empty sides stand for -infinity.
struct ElimCheck {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Enclosure> lhs;
    std::optional<Enclosure> rhs;
    std::string label = "consistency";
};

ElimCheck liouville_elim_check(const AuxForm& F, const ProjPoint& omega, long accuracy_bits = 64);

struct ElimSuiteRow {
    std::uint64_t seed = 0;
    long deg = 0;
    std::vector<long> coeffs;
    std::vector<Rat> omega;
    ElimCheck check;
};

struct ElimSuiteConfig {
    std::size_t count = 100;
    std::uint64_t seed = 1;
    long max_deg = 5;
    long max_coeff = 10;
    long accuracy_bits = 64;
    unsigned workers = 1;
};

/// Binary form sum_i c_i X_0^{d-i} X_1^i.
AuxForm binary_form(const std::vector<long>& coeffs);

/// Random binary forms and rational points; instance i uses its own seed.
std::vector<ElimSuiteRow> elim_suite(const ElimSuiteConfig& cfg);

/// Columns seed,deg,coeffs,omega,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict.
std::string elim_csv(const std::vector<ElimSuiteRow>& rows, int digits = 12);

}  // namespace mahler
