#include "mahler/mahler/equation.hpp"

#include "mahler/errors.hpp"

namespace mahler {

MahlerEquation::MahlerEquation(long q, std::vector<Poly> coeffs, Poly rhs, std::vector<Rat> seeds, std::string name)
    : q_(q), a_(std::move(coeffs)), rhs_(std::move(rhs)), seeds_(std::move(seeds)), name_(std::move(name)) {
    if (q_ < 2) throw InvalidInput("Mahler base q must be at least 2");
    if (a_.empty()) throw InvalidInput("equation needs at least one coefficient");
    if (a_.front().is_zero()) throw InvalidInput("coefficient a_0 must be nonzero");
    if (a_.back().is_zero()) throw InvalidInput("leading coefficient a_m must be nonzero");
    if (a_.size() == 1 && rhs_.is_zero()) throw InvalidInput("order-0 equation must be inhomogeneous");
}

MahlerEquation MahlerEquation::from_rational(long q, const std::vector<RatFun>& coeffs, const RatFun& rhs,
                                             std::vector<Rat> seeds, std::string name) {
    Poly l = Poly::constant(Rat(1));
    auto absorb = [&](const RatFun& f) {
        if (f.is_polynomial()) return;
        Poly g = gcd(l, f.den());
        l = divmod(l * f.den(), g).first;
    };
    for (const auto& c : coeffs) absorb(c);
    absorb(rhs);
    l *= 1 / l.coeff(l.valuation());
    auto clear = [&](const RatFun& f) { return f.num() * divmod(l, f.den()).first; };
    std::vector<Poly> a;
    a.reserve(coeffs.size());
    for (const auto& c : coeffs) a.push_back(clear(c));
    return MahlerEquation(q, std::move(a), clear(rhs), std::move(seeds), std::move(name));
}

MahlerEquation MahlerEquation::with_seeds(std::vector<Rat> seeds) const {
    MahlerEquation out = *this;
    out.seeds_ = std::move(seeds);
    return out;
}

std::size_t MahlerEquation::initial_block() const {
    return a_.front().valuation() / static_cast<std::size_t>(q_ - 1) + 1;
}

}  // namespace mahler
