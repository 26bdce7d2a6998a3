#pragma once

#include "mahler/algebra/matrix.hpp"
#include "mahler/mahler/equation.hpp"
#include "mahler/mahler/series.hpp"

#include <string>
#include <vector>

namespace mahler {

/// Y(z^q) = A(z) Y(z) with A square and invertible over Q(z).
struct MahlerSystem {
    enum class Provenance { Raw, Companion, DirectSum, Iterate };

    long q = 2;
    MatRF A;
    Provenance provenance = Provenance::Raw;
    /// Coordinate 0 of Y is the constant function 1 (inhomogeneous augmentation).
    bool leading_constant = false;

    std::size_t size() const noexcept { return A.rows(); }
};

/// Throws InvalidInput for a non-square matrix, q < 2, or det A = 0.
MahlerSystem make_system(long q, MatRF A);

/// Companion matrix of a homogeneous equation of order m >= 1 (size m), or
/// its (m+1)-dimensional augmentation carrying the constant 1 when b != 0.
/// Y = (f, f(z^q), ..., f(z^{q^{m-1}})), prefixed by 1 in the augmented case.
MahlerSystem companion_system(const MahlerEquation& eq);

/// Companion system that always carries the constant coordinate: for a
/// homogeneous equation this is 1 (+) companion.
MahlerSystem augmented_system(const MahlerEquation& eq);

/// Block-diagonal system; throws MixedBase when the bases differ.
MahlerSystem direct_sum(const std::vector<MahlerSystem>& systems);

/// Y(z^{q^l}) = A(z^{q^{l-1}}) ... A(z^q) A(z) Y(z).
MahlerSystem iterate_system(const MahlerSystem& sys, std::size_t l);

/// Truncated coordinates of Y for the companion (or augmented) system of eq,
/// each exact below `order`.
std::vector<TruncatedSeries> solution_vector(const MahlerEquation& eq, std::size_t order, bool with_constant);

/// Order up to which Y(z^q) - A(z) Y(z) vanishes, given the truncated
/// coordinates of Y. Denominators of A are cleared first.
Valuation system_residual(const MahlerSystem& sys, const std::vector<TruncatedSeries>& y);

std::string to_string(MahlerSystem::Provenance p);

}  // namespace mahler
