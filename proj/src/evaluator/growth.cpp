#include "mahler/evaluator/growth.hpp"

#include "mahler/algebra/enclosure.hpp"
#include "mahler/errors.hpp"

namespace mahler {

namespace {

constexpr long kRhoBits = 20;

/// Rational upper bound for |u|^{1/n} with denominator 2^kRhoBits.
Rat root_upper(const Rat& u, std::size_t n) {
    Enclosure lu = log(Enclosure::from_rat(abs(u), 96));
    Enclosure r = exp(lu / Enclosure(Dyadic(static_cast<long>(n)), 96));
    Rat hi = r.hi().to_rat();
    Int scaled = ceil(hi * Rat(pow(Int(2), kRhoBits)));
    Rat out(scaled, pow(Int(2), kRhoBits));
    out.canonicalize();
    return out;
}

}  // namespace

GrowthProfile growth_profile(const TruncatedSeries& s, const std::optional<DeclaredBound>& declared) {
    const auto& u = s.coeffs;
    if (u.empty()) throw InvalidInput("growth profile of an empty series");
    GrowthProfile g;
    Int den(1);
    for (const auto& c : u) den = lcm(den, c.get_den());
    g.denominator_bits = bit_length(den);
    g.verified_to = u.size() - 1;

    if (declared) {
        if (declared->kappa <= 0 || declared->rho <= 0) throw InvalidInput("declared kappa and rho must be positive");
        Rat bound = declared->kappa;
        for (std::size_t n = 0; n < u.size(); ++n) {
            if (abs(u[n]) > bound)
                throw DeclaredBoundViolated("|u_" + std::to_string(n) + "| = " + abs(u[n]).get_str() +
                                                " exceeds the declared bound",
                                            n);
            bound *= declared->rho;
        }
        g.rho = declared->rho;
        g.kappa = declared->kappa;
        g.certified = true;
        g.reason = declared->reason;
        return g;
    }

    const std::size_t N = u.size();
    Rat rho(0);
    for (std::size_t n = std::max<std::size_t>(1, N / 2); n < N; ++n) {
        if (u[n] == 0) continue;
        Rat r = root_upper(u[n], n);
        if (r > rho) rho = r;
    }
    if (rho == 0) rho = 1;
    Rat kappa(0), power(1);
    for (std::size_t n = 0; n < N; ++n) {
        Rat need = abs(u[n]) / power;
        if (need > kappa) kappa = need;
        power *= rho;
    }
    if (kappa == 0) kappa = 1;
    g.rho = rho;
    g.kappa = kappa;
    g.certified = false;
    g.reason = "fitted";
    return g;
}

}  // namespace mahler
