#pragma once

#include "mahler/algebra/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mahler {

/// Strictly increasing sequence of positive integers u_0 < u_1 < ...
class ExponentSeq {
public:
    enum class Kind { Explicit, Tower, Factorial };

    /// Throws InvalidInput unless the values are positive and strictly increasing.
    static ExponentSeq explicit_list(std::vector<Int> values);
    /// u_n = b^{c^n}, b >= 2, c >= 2.
    static ExponentSeq tower(unsigned long b, unsigned long c);
    /// u_n = (n+1)!, i.e. 1, 2, 6, 24, ...
    static ExponentSeq factorial();

    Kind kind() const noexcept { return kind_; }
    /// Throws InvalidInput past the end of an explicit list.
    Int value(std::size_t n) const;
    /// Number of defined terms (empty for the infinite generators).
    std::optional<std::size_t> length() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::Explicit;
    std::vector<Int> values_;
    unsigned long b_ = 0, c_ = 0;
};

struct GrowthStep {
    std::size_t n = 0;
    /// u_{n+1}^r > u_n^p for C = p/r.
    bool holds = false;
    /// u_{n+1}^r / u_n^p, exactly; the ratio u_{n+1} / u_n^C itself when r = 1.
    Rat ratio;
};

struct GrowthCheck {
    Rat C;
    std::vector<GrowthStep> steps;
    bool all_hold = false;
    /// Ratios strictly increasing over the checked range.
    bool increasing = false;
};

/// Compares u_{n+1} with u_n^C for n < upto in exact integer arithmetic.
GrowthCheck growth_check(const ExponentSeq& u, const Rat& C, std::size_t upto);

}  // namespace mahler
