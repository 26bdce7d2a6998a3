#pragma once

#include "mahler/mahler/series.hpp"

#include <optional>
#include <string>

namespace mahler {

/// |u_n| <= kappa * rho^n, checked exactly for n <= verified_to.
struct GrowthProfile {
    Rat rho;
    Rat kappa;
    std::size_t verified_to = 0;
    /// True only for a caller-declared bound (the reason is kept).
    bool certified = false;
    std::string reason;
    /// Bits of the lcm of the coefficient denominators seen, an observation only.
    std::size_t denominator_bits = 0;
};

struct DeclaredBound {
    Rat kappa;
    Rat rho;
    std::string reason;
};

/// With a declaration, checks it on every available coefficient and returns
/// it certified (throws DeclaredBoundViolated with the first failing index).
/// Otherwise fits rho from max |u_n|^{1/n} over n in [N/2, N) rounded up,
/// and the smallest kappa covering every coefficient; certified = false.
GrowthProfile growth_profile(const TruncatedSeries& s, const std::optional<DeclaredBound>& declared = std::nullopt);

}  // namespace mahler
