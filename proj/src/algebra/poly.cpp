#include "mahler/algebra/poly.hpp"

#include <stdexcept>

namespace mahler {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::monomial(const Rat& c, std::size_t power) {
    std::vector<Rat> v(power + 1);
    v[power] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t Poly::valuation() const noexcept {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return i;
    return 0;
}

const Rat& Poly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

Rat Poly::operator()(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::operator-() const {
    Poly out(*this);
    for (auto& c : out.c_) c = -c;
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

Poly Poly::compose_power(std::size_t k) const {
    if (k == 1 || is_zero()) return *this;
    if (k == 0) return Poly::constant((*this)(Rat(1)));
    std::vector<Rat> v((c_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return Poly(std::move(v));
}

Poly Poly::truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return Poly(std::vector<Rat>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Poly Poly::strip_valuation() const {
    std::size_t v = valuation();
    return Poly(std::vector<Rat>(c_.begin() + static_cast<std::ptrdiff_t>(v), c_.end()));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly out(*this);
    Rat inv = 1 / leading();
    out *= inv;
    return out;
}

Poly Poly::reversed() const { return Poly(std::vector<Rat>(c_.rbegin(), c_.rend())); }

Int Poly::denominator_lcm() const {
    Int l(1);
    for (const auto& c : c_) l = lcm(l, Int(c.get_den()));
    return l;
}

bool Poly::is_integral() const {
    for (const auto& c : c_)
        if (c.get_den() != 1) return false;
    return true;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<Rat> quo(rem.size() - db);
    Rat inv_lead = 1 / bc.back();
    for (std::size_t k = quo.size(); k-- > 0;) {
        Rat q = rem[k + db] * inv_lead;
        quo[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * bc[j];
    }
    rem.resize(db);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Poly mul_trunc(const Poly& a, const Poly& b, std::size_t n) {
    if (a.is_zero() || b.is_zero() || n == 0) return Poly();
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    std::size_t len = std::min(n, ac.size() + bc.size() - 1);
    std::vector<Rat> out(len);
    for (std::size_t i = 0; i < ac.size() && i < len; ++i) {
        if (ac[i] == 0) continue;
        for (std::size_t j = 0; j < bc.size() && i + j < len; ++j) out[i + j] += ac[i] * bc[j];
    }
    return Poly(std::move(out));
}

Poly pow(const Poly& p, unsigned long e) {
    Poly result = Poly::constant(Rat(1)), base = p;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Poly pow_trunc(const Poly& p, unsigned long e, std::size_t n) {
    Poly result = Poly::constant(Rat(1)).truncated(n), base = p.truncated(n);
    while (e) {
        if (e & 1) result = mul_trunc(result, base, n);
        e >>= 1;
        if (e) base = mul_trunc(base, base, n);
    }
    return result;
}

Rat eval_exact(const Poly& p, const Rat& x) { return p(x); }

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Rat mag = abs(c[i]);
        bool neg = c[i] < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string var = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
        if (var.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += var;
        } else {
            out += mag.get_str() + "*" + var;
        }
    }
    return out;
}

}  // namespace mahler
