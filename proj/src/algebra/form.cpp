#include "mahler/algebra/form.hpp"

#include <numeric>
#include <stdexcept>

namespace mahler {

namespace {

long total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0L); }

}  // namespace

void AuxForm::add_term(const Exponents& e, const Poly& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent vector has wrong arity");
    for (long v : e)
        if (v < 0) throw std::invalid_argument("negative exponent in form");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Poly AuxForm::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Poly() : it->second;
}

long AuxForm::deg_x() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total(e));
    return d;
}

long AuxForm::deg_z() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, c.degree());
    return d;
}

bool AuxForm::is_homogeneous() const {
    if (terms_.empty()) return true;
    long d = total(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (total(e) != d) return false;
    return true;
}

bool AuxForm::z_free() const {
    for (const auto& [e, c] : terms_)
        if (c.degree() > 0) return false;
    return true;
}

Rat AuxForm::height() const {
    Rat h(0);
    for (const auto& [e, c] : terms_)
        for (const auto& v : c.coeffs()) h = std::max(h, abs(v));
    return h;
}

bool AuxForm::is_integral() const {
    for (const auto& [e, c] : terms_)
        if (!c.is_integral()) return false;
    return true;
}

AuxForm AuxForm::primitive() const {
    if (terms_.empty()) return *this;
    Int den(1), g(0);
    for (const auto& [e, c] : terms_) den = lcm(den, c.denominator_lcm());
    for (const auto& [e, c] : terms_)
        for (const auto& v : c.coeffs()) g = gcd(g, Rat(v * Rat(den)).get_num());
    Rat scale(den, g);
    scale.canonicalize();
    // Leading term: largest exponent vector, highest z power.
    if (terms_.rbegin()->second.leading() < 0) scale = -scale;
    return scaled(Poly::constant(scale));
}

AuxForm AuxForm::compose_z_power(std::size_t k) const {
    AuxForm out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.compose_power(k));
    return out;
}

AuxForm AuxForm::scaled(const Poly& p) const {
    AuxForm out(nvars_);
    if (p.is_zero()) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * p);
    return out;
}

Rat AuxForm::evaluate(const std::vector<Rat>& x) const {
    if (!z_free()) throw std::invalid_argument("form depends on z");
    return evaluate(Rat(0), x);
}

Rat AuxForm::evaluate(const Rat& zval, const std::vector<Rat>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong arity");
    Rat sum(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c(zval);
        for (std::size_t i = 0; i < nvars_ && t != 0; ++i)
            if (e[i]) t *= pow(x[i], static_cast<unsigned long>(e[i]));
        sum += t;
    }
    return sum;
}

Enclosure AuxForm::evaluate(const std::vector<Enclosure>& x) const {
    if (!z_free()) throw std::invalid_argument("form depends on z");
    if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong arity");
    long prec = Enclosure::kDefaultPrecision;
    for (const auto& v : x) prec = std::max(prec, v.precision());
    Enclosure sum(Dyadic(), prec);
    for (const auto& [e, c] : terms_) {
        Enclosure t = Enclosure::from_rat(c.coeff(0), prec);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i]) t = t * pow(x[i], static_cast<unsigned long>(e[i]));
        sum = sum + t;
    }
    return sum;
}

AuxForm operator+(const AuxForm& a, const AuxForm& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("form arity mismatch");
    AuxForm out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

AuxForm operator-(const AuxForm& a, const AuxForm& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("form arity mismatch");
    AuxForm out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
}

AuxForm operator*(const AuxForm& a, const AuxForm& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("form arity mismatch");
    AuxForm out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

AuxForm variable(std::size_t nvars, std::size_t i) {
    AuxForm f(nvars);
    Exponents e(nvars, 0);
    e.at(i) = 1;
    f.add_term(e, Poly::constant(Rat(1)));
    return f;
}

AuxForm pow(const AuxForm& f, unsigned long e) {
    AuxForm result(f.nvars());
    result.add_term(Exponents(f.nvars(), 0), Poly::constant(Rat(1)));
    AuxForm base = f;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string to_string(const AuxForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : f.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c) + ")";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out += "*X" + std::to_string(i);
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

}  // namespace mahler
