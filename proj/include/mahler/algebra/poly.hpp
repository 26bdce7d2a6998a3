#pragma once

#include "mahler/algebra/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace mahler {

/// Dense univariate polynomial in z over the rationals.
///
/// Coefficient i multiplies z^i. The highest stored coefficient is nonzero,
/// so the zero polynomial has no coefficients at all.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);
    Poly(std::initializer_list<Rat> coeffs);

    static Poly constant(const Rat& c);
    static Poly monomial(const Rat& c, std::size_t power);
    static Poly z() { return monomial(Rat(1), 1); }

    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    /// Index of the lowest nonzero coefficient; 0 for the zero polynomial.
    std::size_t valuation() const noexcept;

    const std::vector<Rat>& coeffs() const noexcept { return c_; }
    /// Coefficient of z^i, zero past the degree.
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const Rat& leading() const;

    Rat operator()(const Rat& x) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rat& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// p(z^k).
    Poly compose_power(std::size_t k) const;
    /// p mod z^n.
    Poly truncated(std::size_t n) const;
    /// p / z^valuation(p).
    Poly strip_valuation() const;
    Poly derivative() const;
    Poly monic() const;
    /// p(1/z) * z^deg(p).
    Poly reversed() const;

    /// Least common multiple of the coefficient denominators.
    Int denominator_lcm() const;
    /// True when every coefficient is an integer.
    bool is_integral() const;

private:
    void trim();
    std::vector<Rat> c_;
};

/// Quotient and remainder; throws std::domain_error on a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// a * b mod z^n.
Poly mul_trunc(const Poly& a, const Poly& b, std::size_t n);
Poly pow(const Poly& p, unsigned long e);
/// p raised to e, truncated mod z^n at every step.
Poly pow_trunc(const Poly& p, unsigned long e, std::size_t n);

Rat eval_exact(const Poly& p, const Rat& x);

/// Renders in the polynomial grammar accepted by parse_poly.
std::string to_string(const Poly& p);

}  // namespace mahler
