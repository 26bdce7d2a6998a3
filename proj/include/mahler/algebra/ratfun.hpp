#pragma once

#include "mahler/algebra/poly.hpp"

#include <string>

namespace mahler {

/// Reduced quotient num/den of polynomials; den is monic and coprime to num.
class RatFun {
public:
    RatFun() : num_(), den_(Poly::constant(Rat(1))) {}
    RatFun(Poly num);  // NOLINT(google-explicit-constructor)
    RatFun(Poly num, Poly den);
    static RatFun constant(const Rat& c) { return RatFun(Poly::constant(c)); }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }

    /// Value at x; throws std::domain_error at a pole.
    Rat operator()(const Rat& x) const;
    bool defined_at(const Rat& x) const { return den_(x) != 0; }

    RatFun operator-() const { return RatFun(-num_, den_); }
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFun compose_power(std::size_t k) const { return RatFun(num_.compose_power(k), den_.compose_power(k)); }

private:
    Poly num_, den_;
};

std::string to_string(const RatFun& f);

}  // namespace mahler
