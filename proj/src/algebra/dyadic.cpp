#include "mahler/algebra/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace mahler {

namespace {

Int shift_left(const Int& m, unsigned long s) {
    Int out;
    mpz_mul_2exp(out.get_mpz_t(), m.get_mpz_t(), s);
    return out;
}

Int div_dir(const Int& n, const Int& d, Round dir) {
    Int q;
    if (dir == Round::Down)
        mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    else
        mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

}  // namespace

Dyadic::Dyadic(Int mantissa, long exponent) : m_(std::move(mantissa)), e_(exponent) { normalize(); }

void Dyadic::normalize() {
    if (m_ == 0) {
        e_ = 0;
        return;
    }
    auto tz = mpz_scan1(m_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);
        e_ += static_cast<long>(tz);
    }
}

long Dyadic::magnitude() const {
    if (m_ == 0) throw std::domain_error("magnitude of zero");
    return static_cast<long>(bit_length(m_)) - 1 + e_;
}

Dyadic Dyadic::from_rat(const Rat& r, long bits, Round dir) {
    if (r == 0) return Dyadic();
    Int num(r.get_num()), den(r.get_den());
    if (den == 1) return Dyadic(num, 0).round(bits, dir);
    // Scale so the quotient carries at least `bits` significant bits.
    long shift = bits + static_cast<long>(bit_length(den)) - static_cast<long>(bit_length(num)) + 2;
    if (shift < 0) shift = 0;
    Int q = div_dir(shift_left(num, static_cast<unsigned long>(shift)), den, dir);
    return Dyadic(q, -shift).round(bits, dir);
}

Rat Dyadic::to_rat() const {
    if (e_ >= 0) return Rat(shift_left(m_, static_cast<unsigned long>(e_)));
    Rat r(m_, shift_left(Int(1), static_cast<unsigned long>(-e_)));
    r.canonicalize();
    return r;
}

double Dyadic::to_double() const {
    if (m_ == 0) return 0.0;
    Dyadic r = round(60, Round::Down);
    double m = r.m_.get_d();
    return std::ldexp(m, static_cast<int>(std::max(-100000L, std::min(100000L, r.e_))));
}

Dyadic Dyadic::round(long bits, Round dir) const {
    if (bits < 2) bits = 2;
    long bl = static_cast<long>(bit_length(m_));
    if (bl <= bits) return *this;
    unsigned long s = static_cast<unsigned long>(bl - bits);
    Int q;
    if (dir == Round::Down)
        mpz_fdiv_q_2exp(q.get_mpz_t(), m_.get_mpz_t(), s);
    else
        mpz_cdiv_q_2exp(q.get_mpz_t(), m_.get_mpz_t(), s);
    return Dyadic(q, e_ + static_cast<long>(s));
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.m_ == 0) return b;
    if (b.m_ == 0) return a;
    if (a.e_ <= b.e_) return Dyadic(a.m_ + shift_left(b.m_, static_cast<unsigned long>(b.e_ - a.e_)), a.e_);
    return Dyadic(b.m_ + shift_left(a.m_, static_cast<unsigned long>(a.e_ - b.e_)), b.e_);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(a.m_ * b.m_, a.e_ + b.e_); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int s = (a - b).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Dyadic Dyadic::div(const Dyadic& a, const Dyadic& b, long bits, Round dir) {
    if (b.m_ == 0) throw std::domain_error("dyadic division by zero");
    if (a.m_ == 0) return Dyadic();
    long shift = bits + static_cast<long>(bit_length(b.m_)) - static_cast<long>(bit_length(a.m_)) + 2;
    if (shift < 0) shift = 0;
    Int q = div_dir(shift_left(a.m_, static_cast<unsigned long>(shift)), b.m_, dir);
    return Dyadic(q, a.e_ - b.e_ - shift).round(bits, dir);
}

Dyadic Dyadic::sqrt(const Dyadic& a, long bits, Round dir) {
    if (a.m_ < 0) throw std::domain_error("square root of a negative dyadic");
    if (a.m_ == 0) return Dyadic();
    // Make the exponent even and the mantissa at least 2*bits+2 bits long.
    long extra = 2 * bits + 4 - static_cast<long>(bit_length(a.m_));
    if (extra < 0) extra = 0;
    long e = a.e_ - extra;
    if (e % 2 != 0) {
        ++extra;
        --e;
    }
    Int m = shift_left(a.m_, static_cast<unsigned long>(extra));
    Int r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    if (dir == Round::Up && r * r != m) r += 1;
    return Dyadic(r, e / 2).round(bits, dir);
}

Dyadic Dyadic::pow(const Dyadic& a, unsigned long n, long bits, Round dir) {
    if (a.m_ < 0) throw std::domain_error("directed power of a negative dyadic");
    Dyadic result(1), base = a.round(bits, dir);
    while (n) {
        if (n & 1) result = (result * base).round(bits, dir);
        n >>= 1;
        if (n) base = (base * base).round(bits, dir);
    }
    return result;
}

std::string Dyadic::to_decimal(int digits, Round dir) const {
    if (m_ == 0) return "0";
    if (digits < 1) digits = 1;
    // Estimate the decimal exponent of |x|, then scale to `digits` digits.
    long mag = magnitude();
    long k = static_cast<long>(std::floor(static_cast<double>(mag) * 0.30102999566398120));
    long scale = digits - 1 - k;
    Rat v = to_rat();
    Rat scaled = scale >= 0 ? Rat(v * Rat(mahler::pow(Int(10), static_cast<unsigned long>(scale))))
                            : Rat(v / Rat(mahler::pow(Int(10), static_cast<unsigned long>(-scale))));
    Int n = dir == Round::Down ? floor(scaled) : ceil(scaled);
    bool neg = n < 0;
    if (neg) n = -n;
    std::string ds = n.get_str();
    if (ds == "0") return "0";
    long exp10 = static_cast<long>(ds.size()) - 1 - scale;
    std::string out = neg ? "-" : "";
    out += ds.substr(0, 1);
    std::string rest = ds.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) out += "." + rest;
    if (exp10 != 0) out += "e" + std::to_string(exp10);
    return out;
}

}  // namespace mahler
