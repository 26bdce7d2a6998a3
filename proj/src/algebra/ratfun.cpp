#include "mahler/algebra/ratfun.hpp"

#include <stdexcept>

namespace mahler {

RatFun::RatFun(Poly num) : num_(std::move(num)), den_(Poly::constant(Rat(1))) {}

RatFun::RatFun(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly::constant(Rat(1));
        return;
    }
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    Rat lead = den.leading();
    num_ = num * (1 / lead);
    den_ = den * (1 / lead);
}

Rat RatFun::operator()(const Rat& x) const {
    Rat d = den_(x);
    if (d == 0) throw std::domain_error("rational function evaluated at a pole");
    return num_(x) / d;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_);
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

std::string to_string(const RatFun& f) {
    if (f.is_polynomial()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace mahler
