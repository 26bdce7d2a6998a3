#pragma once

#include "mahler/algebra/dyadic.hpp"
#include "mahler/algebra/poly.hpp"

#include <string>

namespace mahler {

/// Closed interval [lo, hi] with dyadic endpoints.
///
/// Every operation rounds the lower end down and the upper end up to the
/// working precision (mantissa bits), so the result always contains the
/// exact image of every point of the operands.
class Enclosure {
public:
    static constexpr long kDefaultPrecision = 128;

    Enclosure() = default;
    Enclosure(Dyadic lo, Dyadic hi, long precision = kDefaultPrecision);
    explicit Enclosure(const Dyadic& point, long precision = kDefaultPrecision)
        : Enclosure(point, point, precision) {}

    /// Tightest outward-rounded enclosure of r at `precision` bits.
    static Enclosure from_rat(const Rat& r, long precision = kDefaultPrecision);
    static Enclosure from_rats(const Rat& lo, const Rat& hi, long precision = kDefaultPrecision);

    const Dyadic& lo() const noexcept { return lo_; }
    const Dyadic& hi() const noexcept { return hi_; }
    long precision() const noexcept { return prec_; }
    Enclosure with_precision(long precision) const;

    Dyadic width() const { return hi_ - lo_; }
    Dyadic mid() const { return (lo_ + hi_) * Dyadic::pow2(-1); }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const Rat& x) const;
    bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Enclosure& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool positive() const { return lo_.sign() > 0; }
    bool negative() const { return hi_.sign() < 0; }
    bool intersects(const Enclosure& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }

    Enclosure operator-() const { return Enclosure(-hi_, -lo_, prec_); }
    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    /// Throws std::domain_error when b contains zero.
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);

    /// Widens by [-r, r] for r >= 0.
    Enclosure widened(const Dyadic& r) const;

    std::string to_string(int digits = 20) const;

private:
    Dyadic lo_, hi_;
    long prec_ = kDefaultPrecision;
};

Enclosure hull(const Enclosure& a, const Enclosure& b);
Enclosure abs(const Enclosure& x);
Enclosure sqr(const Enclosure& x);
Enclosure pow(const Enclosure& x, unsigned long n);
/// x^n for arbitrarily large n; for |x| < 1 and n beyond 2^32 the result is
/// bounded by the 2^32-th power.
Enclosure pow(const Enclosure& x, const Int& n);
Enclosure sqrt(const Enclosure& x);
Enclosure max(const Enclosure& a, const Enclosure& b);
Enclosure min(const Enclosure& a, const Enclosure& b);

/// e^x by argument halving, Taylor series with remainder bound, and squaring.
Enclosure exp(const Enclosure& x);
/// log x for x > 0 via x = 2^k * y with y in [1, 2) and an atanh series.
Enclosure log(const Enclosure& x);
Enclosure log2_constant(long precision);

/// Complex rectangle re + i*im.
struct ComplexEnclosure {
    Enclosure re, im;

    friend ComplexEnclosure operator+(const ComplexEnclosure& a, const ComplexEnclosure& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexEnclosure operator-(const ComplexEnclosure& a, const ComplexEnclosure& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexEnclosure operator*(const ComplexEnclosure& a, const ComplexEnclosure& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexEnclosure operator*(const Enclosure& s, const ComplexEnclosure& b) {
        return {s * b.re, s * b.im};
    }
};

/// Enclosure of |z|.
Enclosure modulus(const ComplexEnclosure& z);

/// Horner evaluation of p over x; contains p(t) for every t in x.
Enclosure eval_enclosure(const Poly& p, const Enclosure& x);

}  // namespace mahler
