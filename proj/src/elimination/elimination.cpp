#include "mahler/elimination/elimination.hpp"

#include "mahler/algebra/roots.hpp"
#include "mahler/errors.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace mahler {

ProjPoint ProjPoint::from_rats(std::vector<Rat> x, long precision) {
    ProjPoint p;
    for (const auto& v : x) p.coords.push_back(Enclosure::from_rat(v, precision));
    p.exact = std::move(x);
    bool zero = true;
    for (const auto& v : *p.exact) zero = zero && v == 0;
    if (zero || p.coords.empty()) throw InvalidInput("projective point with all coordinates zero");
    return p;
}

ProjPoint ProjPoint::from_enclosures(std::vector<Enclosure> x) {
    bool zero = true;
    for (const auto& v : x) zero = zero && v.is_point() && v.lo().is_zero();
    if (zero || x.empty()) throw InvalidInput("projective point with all coordinates zero");
    return ProjPoint{std::move(x), std::nullopt};
}

Enclosure ProjPoint::norm() const {
    Enclosure n = abs(coords.front());
    for (const auto& c : coords) n = max(n, abs(c));
    return n;
}

ProjPoint ProjPoint::normalized() const {
    if (exact) {
        Rat m(0);
        for (const auto& v : *exact) m = std::max(m, abs(v));
        std::vector<Rat> y;
        for (const auto& v : *exact) y.push_back(v / m);
        return from_rats(std::move(y), coords.front().precision());
    }
    const Enclosure n = norm();
    std::vector<Enclosure> y;
    for (const auto& c : coords) y.push_back(c / n);
    return from_enclosures(std::move(y));
}

std::string ProjPoint::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ":";
        s += exact ? (*exact)[i].get_str() : coords[i].to_string(12);
    }
    return s;
}

namespace {

void require_zfree_homogeneous(const AuxForm& P) {
    if (P.is_zero()) throw ZeroForm("the zero form has no degree or height");
    if (!P.z_free()) throw InvalidInput("form coefficients must not depend on z");
    if (!P.is_homogeneous()) throw InvalidInput("form must be homogeneous");
}

Enclosure log_of(const Rat& x, long prec) { return log(Enclosure::from_rat(abs(x), prec)); }

}  // namespace

PrincipalQuantities principal_quantities(const AuxForm& P, const ProjPoint& omega, long precision) {
    require_zfree_homogeneous(P);
    if (omega.coords.size() != P.nvars()) throw ArityMismatch("point and form have different arity");
    const long work = precision + 32;
    const long m = static_cast<long>(P.nvars()) - 1;
    const long deg = P.deg_x();

    PrincipalQuantities q;
    q.deg = deg;
    q.logH_upper =
        (log_of(P.height(), work) + Enclosure(Dyadic(m * m * deg), work)).with_precision(precision);

    Enclosure value;
    Enclosure norm;
    if (omega.exact) {
        Rat v = P.evaluate(*omega.exact);
        if (v == 0) return q;
        value = Enclosure::from_rat(abs(v), work);
        Rat n(0);
        for (const auto& c : *omega.exact) n = std::max(n, abs(c));
        norm = Enclosure::from_rat(n, work);
    } else {
        std::vector<Enclosure> x;
        for (const auto& c : omega.coords) x.push_back(c.with_precision(work));
        value = abs(P.evaluate(x));
        if (!value.positive()) throw PrecisionExhausted("|P(omega)| not separated from zero");
        norm = omega.norm().with_precision(work);
    }
    Enclosure e = log(value) - Enclosure(Dyadic(deg), work) * log(norm) +
                  Enclosure(Dyadic(2 * m * deg), work) * log(Enclosure(Dyadic(m + 1), work));
    q.logAbs_upper = e.with_precision(precision);
    return q;
}

Enclosure dist_p1(const AuxForm& F, const ProjPoint& omega, long accuracy_bits) {
    if (F.is_zero()) throw ZeroForm("distance to the zero form");
    if (F.nvars() != 2 || omega.coords.size() != 2) throw ArityMismatch("dist_p1 needs a binary form and a point of P^1");
    const long prec = accuracy_bits + 64;
    if (omega.exact && F.z_free() && F.evaluate(*omega.exact) == 0) return Enclosure(Dyadic(0), prec);

    const auto roots = binary_form_roots(F, accuracy_bits + 8);
    std::vector<Enclosure> w;
    for (const auto& c : omega.coords) w.push_back(c.with_precision(prec));
    const Enclosure wnorm = max(abs(w[0]), abs(w[1]));
    std::optional<Enclosure> best;
    for (const auto& r : roots) {
        // omega_0 beta_1 - omega_1 beta_0 with real omega.
        ComplexEnclosure cross = w[0] * r.x1 - w[1] * r.x0;
        Enclosure bnorm = max(modulus(r.x0), modulus(r.x1));
        Enclosure d = modulus(cross) / (bnorm * wnorm);
        best = best ? min(*best, d) : d;
    }
    return *best;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Violation: return "violation";
    }
    return "";
}

ElimCheck liouville_elim_check(const AuxForm& F, const ProjPoint& omega, long accuracy_bits) {
    require_zfree_homogeneous(F);
    if (F.nvars() != 2) throw ArityMismatch("the consistency check is implemented on P^1 only");
    const long prec = accuracy_bits + 32;
    ElimCheck out;
    const long deg = F.deg_x();
    const PrincipalQuantities pq = principal_quantities(F, omega, prec);
    if (pq.logAbs_upper) out.rhs = *pq.logAbs_upper + Enclosure(Dyadic(3 * deg), prec);

    const Enclosure dist = dist_p1(F, omega, accuracy_bits);
    if (dist.is_point() && dist.lo().is_zero()) {
        out.verdict = Verdict::True;
        return out;
    }
    if (!dist.positive()) return out;
    out.lhs = Enclosure(Dyadic(deg), prec) * log(dist.with_precision(prec));
    if (!out.rhs) {
        out.verdict = Verdict::Violation;
        return out;
    }
    if (!(out.rhs->lo() < out.lhs->hi()))
        out.verdict = Verdict::True;
    else if (out.rhs->hi() < out.lhs->lo())
        out.verdict = Verdict::Violation;
    return out;
}

AuxForm binary_form(const std::vector<long>& coeffs) {
    const long d = static_cast<long>(coeffs.size()) - 1;
    AuxForm f(2);
    for (long i = 0; i <= d; ++i)
        f.add_term({d - i, i}, Poly::constant(Rat(coeffs[static_cast<std::size_t>(i)])));
    return f;
}

namespace {

std::uint64_t instance_seed(std::uint64_t seed, std::size_t i) {
    std::uint64_t x = seed * 0x9e3779b97f4a7c15ULL + i + 1;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ElimSuiteRow run_instance(const ElimSuiteConfig& cfg, std::uint64_t s) {
    std::mt19937_64 rng(s);
    auto uniform = [&](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    ElimSuiteRow row;
    row.seed = s;
    row.deg = uniform(1, cfg.max_deg);
    do {
        row.coeffs.assign(static_cast<std::size_t>(row.deg) + 1, 0);
        for (auto& c : row.coeffs) c = uniform(-cfg.max_coeff, cfg.max_coeff);
    } while (std::all_of(row.coeffs.begin(), row.coeffs.end(), [](long c) { return c == 0; }));
    do {
        row.omega.clear();
        for (int k = 0; k < 2; ++k) {
            Rat v(uniform(-20, 20), static_cast<unsigned long>(uniform(1, 20)));
            v.canonicalize();
            row.omega.push_back(v);
        }
    } while (row.omega[0] == 0 && row.omega[1] == 0);
    row.check = liouville_elim_check(binary_form(row.coeffs), ProjPoint::from_rats(row.omega).normalized(),
                                     cfg.accuracy_bits);
    return row;
}

std::string side(const std::optional<Enclosure>& e, bool lo, int digits) {
    if (!e) return "-inf";
    return lo ? e->lo().to_decimal(digits, Round::Down) : e->hi().to_decimal(digits, Round::Up);
}

}  // namespace

std::vector<ElimSuiteRow> elim_suite(const ElimSuiteConfig& cfg) {
    if (cfg.max_deg < 1 || cfg.max_coeff < 1) throw InvalidInput("suite needs max_deg >= 1 and max_coeff >= 1");
    std::vector<ElimSuiteRow> rows(cfg.count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cfg.count;) rows[i] = run_instance(cfg, instance_seed(cfg.seed, i));
    };
    const unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return rows;
}

std::string elim_csv(const std::vector<ElimSuiteRow>& rows, int digits) {
    std::ostringstream os;
    os << "seed,deg,coeffs,omega,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict\n";
    for (const auto& r : rows) {
        os << r.seed << ',' << r.deg << ',';
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) os << (i ? " " : "") << r.coeffs[i];
        os << ',' << r.omega[0].get_str() << ':' << r.omega[1].get_str() << ',';
        os << side(r.check.lhs, true, digits) << ',' << side(r.check.lhs, false, digits) << ',';
        os << side(r.check.rhs, true, digits) << ',' << side(r.check.rhs, false, digits) << ',';
        os << to_string(r.check.verdict) << '\n';
    }
    return os.str();
}

}  // namespace mahler
