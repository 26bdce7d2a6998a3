#include "mahler/mahler/regularity.hpp"

#include "mahler/algebra/roots.hpp"
#include "mahler/errors.hpp"

namespace mahler {

namespace {

/// Monic square-free part; repeated factors only loosen the root bound.
Poly radical(const Poly& p) {
    const Poly g = gcd(p, p.derivative());
    return (g.degree() > 0 ? divmod(p, g).first : p).monic();
}

std::vector<Poly> singular_polys(const MahlerSystem& sys) {
    std::vector<Poly> out;
    Poly den = sys.A.denominator_lcm();
    if (den.degree() > 0) out.push_back(radical(den));
    Poly det = sys.A.determinant().num();
    if (det.degree() > 0) out.push_back(radical(det));
    return out;
}

Rat min_root_bound(const std::vector<Poly>& polys) {
    Rat r(1);
    for (const auto& p : polys) {
        Rat b = root_lower_bound(p);
        if (b < r) r = b;
    }
    return r;
}

}  // namespace

RegularityReport regularity(const MahlerSystem& sys, const Rat& alpha) {
    if (alpha == 0 || abs(alpha) >= 1)
        throw PointOutOfRange("alpha must satisfy 0 < |alpha| < 1, got " + alpha.get_str());
    RegularityReport rep;
    rep.alpha = alpha;
    rep.q = sys.q;
    rep.singular_polys = singular_polys(sys);
    rep.r_min = min_root_bound(rep.singular_polys);

    Rat x = alpha;
    for (long k = 0;; ++k) {
        for (const auto& p : rep.singular_polys) {
            if (p(x) == 0) {
                rep.regular = false;
                rep.failure_k = k;
                rep.checked_up_to = k;
                rep.witness = x;
                return rep;
            }
        }
        if (abs(x) < rep.r_min) {
            rep.regular = true;
            rep.checked_up_to = k;
            return rep;
        }
        x = pow(x, static_cast<unsigned long>(sys.q));
    }
}

bool recheck(const MahlerSystem& sys, const RegularityReport& report) {
    const auto polys = singular_polys(sys);
    if (report.r_min <= 0) return false;
    for (const auto& p : polys)
        if (root_lower_bound(p) < report.r_min) return false;
    Rat x = report.alpha;
    for (long k = 0; k <= report.checked_up_to; ++k) {
        bool hit = false;
        for (const auto& p : polys) hit = hit || p(x) == 0;
        if (report.regular && hit) return false;
        if (!report.regular && k == report.checked_up_to)
            return hit && report.failure_k == k && report.witness == x;
        if (k < report.checked_up_to) x = pow(x, static_cast<unsigned long>(sys.q));
    }
    return abs(x) < report.r_min;
}

RegularPowerSearch find_regular_power(const MahlerEquation& eq, const Rat& alpha, std::size_t lmax) {
    RegularPowerSearch out;
    const MahlerSystem base = companion_system(eq);
    for (std::size_t l = 1; l <= lmax; ++l) {
        MahlerSystem sys = iterate_system(base, l);
        RegularityReport rep = regularity(sys, alpha);
        out.transcript.push_back(rep);
        if (rep.regular) {
            out.l = l;
            out.system = std::move(sys);
            break;
        }
    }
    return out;
}

}  // namespace mahler
