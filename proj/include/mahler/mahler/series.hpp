#pragma once

#include "mahler/algebra/poly.hpp"
#include "mahler/mahler/equation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

/// Exact prefix u(0..N-1) of a power series; every stored coefficient is exact.
struct TruncatedSeries {
    std::vector<Rat> coeffs;
    /// Base of the Mahler equation the series came from, when known.
    std::optional<long> q;

    std::size_t guaranteed_order() const noexcept { return coeffs.size(); }
    Poly as_poly() const { return Poly(coeffs); }
    /// s(z^k) truncated to the same guaranteed window in the new variable.
    TruncatedSeries compose_power(std::size_t k) const;
};

/// z-adic valuation measured on truncated data.
struct Valuation {
    enum class Kind { Exact, AtLeast, Infinite };
    Kind kind = Kind::Infinite;
    long value = 0;

    static Valuation exact(long v) { return {Kind::Exact, v}; }
    static Valuation at_least(long v) { return {Kind::AtLeast, v}; }
    static Valuation infinite() { return {Kind::Infinite, 0}; }

    bool is_infinite() const noexcept { return kind == Kind::Infinite; }
    bool is_exact() const noexcept { return kind == Kind::Exact; }
    /// Guaranteed val >= n.
    bool at_least_as(long n) const noexcept { return kind == Kind::Infinite || value >= n; }
    std::string to_string() const;
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// First N coefficients of the power-series solution fixed by the seeds.
///
/// The initial block u(0..n*-1), n* = floor(val(a_0)/(q-1)) + 1, is solved
/// as an exact linear system against the seeds; beyond it each coefficient
/// follows from the coefficient of z^{n+val(a_0)}. Seeds past the initial
/// block are checked against the recurrence.
///
/// Throws InconsistentSeeds or Underdetermined.
TruncatedSeries expand_series(const MahlerEquation& eq, std::size_t n);

/// Valuation of sum_j a_j(z) s(z^{q^j}) - b(z), as far as the truncation of s
/// determines it: Exact when a nonzero residual coefficient is certain,
/// AtLeast(window) when the residual vanishes on the guaranteed window,
/// Infinite when the substituted truncation leaves no residual at all.
Valuation verify_equation(const MahlerEquation& eq, const TruncatedSeries& s);

}  // namespace mahler
