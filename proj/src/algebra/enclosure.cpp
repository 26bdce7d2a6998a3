#include "mahler/algebra/enclosure.hpp"

#include <algorithm>
#include <stdexcept>

namespace mahler {

Enclosure::Enclosure(Dyadic lo, Dyadic hi, long precision)
    : lo_(std::move(lo)), hi_(std::move(hi)), prec_(precision) {
    if (hi_ < lo_) throw std::invalid_argument("enclosure with lo > hi");
    lo_ = lo_.round(prec_, Round::Down);
    hi_ = hi_.round(prec_, Round::Up);
}

Enclosure Enclosure::from_rat(const Rat& r, long precision) {
    return Enclosure(Dyadic::from_rat(r, precision, Round::Down), Dyadic::from_rat(r, precision, Round::Up),
                     precision);
}

Enclosure Enclosure::from_rats(const Rat& lo, const Rat& hi, long precision) {
    return Enclosure(Dyadic::from_rat(lo, precision, Round::Down), Dyadic::from_rat(hi, precision, Round::Up),
                     precision);
}

Enclosure Enclosure::with_precision(long precision) const { return Enclosure(lo_, hi_, precision); }

bool Enclosure::contains(const Rat& x) const { return lo_.to_rat() <= x && x <= hi_.to_rat(); }

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return Enclosure(a.lo_ + b.lo_, a.hi_ + b.hi_, std::max(a.prec_, b.prec_));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    return Enclosure(a.lo_ - b.hi_, a.hi_ - b.lo_, std::max(a.prec_, b.prec_));
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    Dyadic p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    Dyadic lo = min(min(p1, p2), min(p3, p4));
    Dyadic hi = max(max(p1, p2), max(p3, p4));
    return Enclosure(lo, hi, std::max(a.prec_, b.prec_));
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.contains_zero()) throw std::domain_error("enclosure division by an interval containing zero");
    long p = std::max(a.prec_, b.prec_);
    const Dyadic* num[2] = {&a.lo_, &a.hi_};
    const Dyadic* den[2] = {&b.lo_, &b.hi_};
    Dyadic lo, hi;
    bool first = true;
    for (auto n : num)
        for (auto d : den) {
            Dyadic l = Dyadic::div(*n, *d, p, Round::Down);
            Dyadic h = Dyadic::div(*n, *d, p, Round::Up);
            if (first) {
                lo = l;
                hi = h;
                first = false;
            } else {
                lo = min(lo, l);
                hi = max(hi, h);
            }
        }
    return Enclosure(lo, hi, p);
}

Enclosure Enclosure::widened(const Dyadic& r) const {
    if (r.sign() < 0) throw std::invalid_argument("negative widening radius");
    return Enclosure(lo_ - r, hi_ + r, prec_);
}

std::string Enclosure::to_string(int digits) const {
    return "[" + lo_.to_decimal(digits, Round::Down) + ", " + hi_.to_decimal(digits, Round::Up) + "]";
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
    return Enclosure(min(a.lo(), b.lo()), max(a.hi(), b.hi()), std::max(a.precision(), b.precision()));
}

Enclosure abs(const Enclosure& x) {
    if (x.lo().sign() >= 0) return x;
    if (x.hi().sign() <= 0) return -x;
    return Enclosure(Dyadic(), max(-x.lo(), x.hi()), x.precision());
}

Enclosure sqr(const Enclosure& x) {
    Enclosure a = abs(x);
    return Enclosure(a.lo() * a.lo(), a.hi() * a.hi(), x.precision());
}

Enclosure pow(const Enclosure& x, unsigned long n) {
    long p = x.precision();
    if (n == 0) return Enclosure(Dyadic(1), p);
    auto up = [&](const Dyadic& d) { return Dyadic::pow(d, n, p, Round::Up); };
    auto down = [&](const Dyadic& d) { return Dyadic::pow(d, n, p, Round::Down); };
    if (x.lo().sign() >= 0) return Enclosure(down(x.lo()), up(x.hi()), p);
    if (x.hi().sign() <= 0) {
        Enclosure m(down(-x.hi()), up(-x.lo()), p);
        return n % 2 == 0 ? m : -m;
    }
    if (n % 2 == 0) return Enclosure(Dyadic(), up(max(-x.lo(), x.hi())), p);
    return Enclosure(-up(-x.lo()), up(x.hi()), p);
}

Enclosure pow(const Enclosure& x, const Int& n) {
    static const Int kLimit = Int(1) << 32;
    if (n < 0) throw std::domain_error("negative exponent");
    if (n <= kLimit) return pow(x, n.get_ui());
    Enclosure a = abs(x);
    if (!(a.hi() < Dyadic(1))) throw std::domain_error("huge power of an enclosure not inside (-1, 1)");
    Dyadic bound = pow(a, kLimit.get_ui()).hi();
    if (x.lo().sign() >= 0) return Enclosure(Dyadic(), bound, x.precision());
    return Enclosure(-bound, bound, x.precision());
}

Enclosure sqrt(const Enclosure& x) {
    if (x.hi().sign() < 0) throw std::domain_error("square root of a negative enclosure");
    long p = x.precision();
    Dyadic lo = x.lo().sign() <= 0 ? Dyadic() : Dyadic::sqrt(x.lo(), p, Round::Down);
    return Enclosure(lo, Dyadic::sqrt(x.hi(), p, Round::Up), p);
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
    return Enclosure(max(a.lo(), b.lo()), max(a.hi(), b.hi()), std::max(a.precision(), b.precision()));
}

Enclosure min(const Enclosure& a, const Enclosure& b) {
    return Enclosure(min(a.lo(), b.lo()), min(a.hi(), b.hi()), std::max(a.precision(), b.precision()));
}

namespace {

/// Enclosure of e^d for a single dyadic d.
Enclosure exp_point(const Dyadic& d, long prec) {
    if (d.is_zero()) return Enclosure(Dyadic(1), prec);
    long s = std::max(0L, d.magnitude() + 11);
    long work = prec + s + 24;
    Enclosure r(Dyadic(d.mantissa(), d.exponent() - s), work);
    // |r| < 2^-10, so the Taylor remainder after term k is at most twice |term_{k+1}|.
    Enclosure sum(Dyadic(1), work), term(Dyadic(1), work);
    Dyadic eps = Dyadic::pow2(-work - 4);
    for (unsigned long k = 1;; ++k) {
        term = term * r / Enclosure(Dyadic(static_cast<long>(k)), work);
        sum = sum + term;
        Dyadic bound = max(abs(term).hi(), Dyadic());
        if (bound < eps) {
            sum = sum.widened(bound * Dyadic(2));
            break;
        }
    }
    for (long i = 0; i < s; ++i) sum = sqr(sum);
    return sum.with_precision(prec);
}

/// atanh(t) for 0 <= t <= 1/3 with explicit remainder.
Enclosure atanh_small(const Enclosure& t, long work) {
    Enclosure t2 = sqr(t);
    Enclosure power = t, sum = t;
    Dyadic eps = Dyadic::pow2(-work - 4);
    for (unsigned long k = 1;; ++k) {
        power = power * t2;
        Enclosure term = power / Enclosure(Dyadic(static_cast<long>(2 * k + 1)), work);
        sum = sum + term;
        Dyadic bound = abs(term).hi();
        if (bound < eps) {
            // Remaining terms form a series with ratio <= t^2 <= 1/9.
            return sum.widened(bound * Dyadic(2));
        }
    }
}

Enclosure log_point(const Dyadic& d, long prec) {
    if (d.sign() <= 0) throw std::domain_error("logarithm of a non-positive number");
    long k = d.magnitude();
    long work = prec + 24 + (k != 0 ? static_cast<long>(bit_length(Int(std::abs(k)))) : 0);
    Dyadic y(d.mantissa(), d.exponent() - k);  // y in [1, 2)
    Enclosure ye(y, work);
    Enclosure one(Dyadic(1), work);
    Enclosure t = (ye - one) / (ye + one);
    Enclosure ly = atanh_small(t, work) * Enclosure(Dyadic(2), work);
    if (k == 0) return ly.with_precision(prec);
    Enclosure l2 = log2_constant(work);
    return (Enclosure(Dyadic(k), work) * l2 + ly).with_precision(prec);
}

}  // namespace

Enclosure log2_constant(long precision) {
    long work = precision + 16;
    Enclosure third = Enclosure(Dyadic(1), work) / Enclosure(Dyadic(3), work);
    return (atanh_small(third, work) * Enclosure(Dyadic(2), work)).with_precision(precision);
}

Enclosure exp(const Enclosure& x) {
    long p = x.precision();
    Enclosure lo = exp_point(x.lo(), p);
    if (x.is_point()) return lo;
    return Enclosure(lo.lo(), exp_point(x.hi(), p).hi(), p);
}

Enclosure log(const Enclosure& x) {
    if (!x.positive()) throw std::domain_error("logarithm of an enclosure not strictly positive");
    long p = x.precision();
    Enclosure lo = log_point(x.lo(), p);
    if (x.is_point()) return lo;
    return Enclosure(lo.lo(), log_point(x.hi(), p).hi(), p);
}

Enclosure modulus(const ComplexEnclosure& z) { return sqrt(sqr(z.re) + sqr(z.im)); }

Enclosure eval_enclosure(const Poly& p, const Enclosure& x) {
    const long prec = x.precision();
    Enclosure acc(Dyadic(0), Dyadic(0), prec);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Enclosure::from_rat(*it, prec);
    return acc;
}

}  // namespace mahler
