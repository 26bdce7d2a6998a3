#pragma once

#include "mahler/mahler/system.hpp"

#include <optional>
#include <vector>

namespace mahler {

/// Certificate for the regularity of alpha with respect to a system.
///
/// Regular: S(alpha^{q^k}) != 0 was checked exactly for k <= checked_up_to,
/// and |alpha|^{q^checked_up_to} < r_min bounds every later power away from
/// the nonzero roots of S. Not regular: witness = alpha^{q^failure_k} is an
/// exact root of one of singular_polys.
struct RegularityReport {
    bool regular = false;
    long checked_up_to = 0;
    std::optional<long> failure_k;
    Rat r_min;
    std::vector<Poly> singular_polys;
    std::optional<Rat> witness;
    Rat alpha;
    long q = 2;
};

/// Throws PointOutOfRange unless 0 < |alpha| < 1.
RegularityReport regularity(const MahlerSystem& sys, const Rat& alpha);

/// Re-checks a report with fresh exact arithmetic; true when it is a valid
/// certificate for sys and alpha.
bool recheck(const MahlerSystem& sys, const RegularityReport& report);

struct RegularPowerSearch {
    std::optional<std::size_t> l;
    std::optional<MahlerSystem> system;
    /// One report per l tried, in order.
    std::vector<RegularityReport> transcript;
    bool found() const noexcept { return l.has_value(); }
};

/// Smallest l <= lmax for which the l-fold iterate of the companion system
/// is regular at alpha. An empty result is a normal outcome.
RegularPowerSearch find_regular_power(const MahlerEquation& eq, const Rat& alpha, std::size_t lmax);

}  // namespace mahler
