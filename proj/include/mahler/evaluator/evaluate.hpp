#pragma once

#include "mahler/algebra/enclosure.hpp"
#include "mahler/evaluator/growth.hpp"
#include "mahler/mahler/equation.hpp"
#include "mahler/mahler/system.hpp"

#include <json.hpp>

#include <string>

namespace mahler {

struct ValueEnclosure {
    Enclosure value;
    std::size_t terms_used = 0;
    /// Upper bound for the omitted tail; the value is partial_sum +/- tail_bound.
    Rat tail_bound;
    Rat partial_sum;
    bool certified = false;
    std::string route;
};

/// f(alpha) from the exact partial sum of the first N + 1 terms plus the
/// geometric tail kappa (rho|alpha|)^{N+1} / (1 - rho|alpha|), with N the
/// least index giving width <= target_width.
///
/// Throws PointOutOfRange unless 0 < |alpha| < 1, TailDiverges if
/// rho|alpha| >= 1.
ValueEnclosure eval_at(const MahlerEquation& eq, const Rat& alpha, const GrowthProfile& profile,
                       const Dyadic& target_width);

/// Evaluates Y at alpha^{Q^k} (Q the system base) and pulls back through the
/// exact inverses A(alpha^{Q^j})^{-1}, j = k-1, ..., 0. sys must be the
/// companion (or augmented, or iterated) system of eq.
///
/// Throws NotRegular when alpha is not a regular point of sys.
ValueEnclosure eval_via_system(const MahlerSystem& sys, const MahlerEquation& eq, const Rat& alpha, std::size_t k,
                               const GrowthProfile& profile, const Dyadic& target_width);

/// {value_lo, value_hi, terms_used, tail_bound, certified, route}
nlohmann::ordered_json to_json(const ValueEnclosure& v, int digits = 40);

}  // namespace mahler
