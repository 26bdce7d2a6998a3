#pragma once

#include "mahler/algebra/rational.hpp"

#include <compare>
#include <string>

namespace mahler {

enum class Round { Down, Up };

/// Exact binary rational mantissa * 2^exponent, kept with an odd mantissa.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(Int mantissa, long exponent);
    Dyadic(long v) : Dyadic(Int(v), 0) {}  // NOLINT(google-explicit-constructor)

    /// Nearest dyadic with at most `bits` mantissa bits, rounded in `dir`.
    static Dyadic from_rat(const Rat& r, long bits, Round dir);
    static Dyadic pow2(long e) { return Dyadic(Int(1), e); }

    const Int& mantissa() const noexcept { return m_; }
    long exponent() const noexcept { return e_; }
    int sign() const noexcept { return sgn(m_); }
    bool is_zero() const noexcept { return m_ == 0; }
    /// floor(log2 |x|); undefined for zero.
    long magnitude() const;

    Rat to_rat() const;
    double to_double() const;
    Dyadic round(long bits, Round dir) const;

    Dyadic operator-() const { return Dyadic(Int(-m_), e_); }
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    /// a / b rounded to `bits` mantissa bits in direction `dir`.
    static Dyadic div(const Dyadic& a, const Dyadic& b, long bits, Round dir);
    /// sqrt(a) for a >= 0, rounded in direction `dir`.
    static Dyadic sqrt(const Dyadic& a, long bits, Round dir);
    /// a^n for a >= 0 with every product rounded in direction `dir`.
    static Dyadic pow(const Dyadic& a, unsigned long n, long bits, Round dir);

    /// Scientific decimal with `digits` significant digits, rounded in `dir`.
    std::string to_decimal(int digits, Round dir) const;

private:
    void normalize();
    Int m_{0};
    long e_ = 0;
};

inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace mahler
