#pragma once

#include "mahler/algebra/enclosure.hpp"

#include <string>
#include <vector>

namespace mahler {

struct ContinuedFraction {
    std::vector<Int> quotients;
    enum class Stop { Exact, Ambiguous, MaxTerms } stop = Stop::MaxTerms;
    /// Width of the remaining interval when expansion stopped.
    Rat width;
};

/// Partial quotients shared by every real number in [lo, hi].
ContinuedFraction continued_fraction(const Rat& lo, const Rat& hi, std::size_t max_terms);
ContinuedFraction continued_fraction(const Enclosure& x, std::size_t max_terms);
/// Complete expansion of an exact rational (or its first max_terms quotients).
ContinuedFraction continued_fraction(const Rat& x, std::size_t max_terms);

std::string to_string(ContinuedFraction::Stop s);

}  // namespace mahler
