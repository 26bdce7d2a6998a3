#include "mahler/algebra/roots.hpp"

#include "mahler/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace mahler {

Rat root_lower_bound(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("root bound of the zero polynomial");
    Poly s = p.strip_valuation();
    if (s.degree() == 0) return Rat(1);
    Rat c0 = abs(s.coeff(0));
    Rat m(0);
    for (std::size_t i = 1; i < s.coeffs().size(); ++i) m = std::max(m, abs(s.coeffs()[i]));
    return c0 / (c0 + m);
}

std::vector<Poly> squarefree_decomposition(const Poly& f) {
    std::vector<Poly> out;
    if (f.degree() < 1) return out;
    Poly a = f.monic();
    Poly b = gcd(a, a.derivative());
    Poly c = divmod(a, b).first;
    Poly d = divmod(a.derivative(), b).first - c.derivative();
    while (c.degree() > 0) {
        Poly g = gcd(c, d);
        out.push_back(g);
        c = divmod(c, g).first;
        d = divmod(d, g).first - c.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

namespace {

using Cld = std::complex<long double>;

/// Approximate complex number with dyadic parts (no rounding guarantees).
struct ApproxC {
    Dyadic re, im;
};

ApproxC add(const ApproxC& a, const ApproxC& b, long w) {
    return {(a.re + b.re).round(w, Round::Down), (a.im + b.im).round(w, Round::Down)};
}
ApproxC sub(const ApproxC& a, const ApproxC& b, long w) {
    return {(a.re - b.re).round(w, Round::Down), (a.im - b.im).round(w, Round::Down)};
}
ApproxC mul(const ApproxC& a, const ApproxC& b, long w) {
    return {(a.re * b.re - a.im * b.im).round(w, Round::Down), (a.re * b.im + a.im * b.re).round(w, Round::Down)};
}
ApproxC div(const ApproxC& a, const ApproxC& b, long w) {
    Dyadic den = b.re * b.re + b.im * b.im;
    return {Dyadic::div(a.re * b.re + a.im * b.im, den, w, Round::Down),
            Dyadic::div(a.im * b.re - a.re * b.im, den, w, Round::Down)};
}

Dyadic to_dyadic(long double v) {
    if (v == 0) return Dyadic();
    int e;
    long double m = std::frexp(v, &e);
    auto mant = static_cast<long long>(std::ldexp(m, 63));
    return Dyadic(Int(static_cast<long>(mant)), static_cast<long>(e) - 63);
}

std::vector<Cld> aberth(const std::vector<long double>& c) {
    const std::size_t n = c.size() - 1;
    long double bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(c[i] / c[n]));
    bound += 1;
    std::vector<Cld> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double th = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
        z[k] = std::polar(bound * 0.7L, th);
    }
    for (int it = 0; it < 2000; ++it) {
        long double worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Cld p = c[n], dp = 0;
            for (std::size_t i = n; i-- > 0;) {
                dp = dp * z[k] + p;
                p = p * z[k] + c[i];
            }
            if (p == Cld(0)) continue;
            Cld ratio = p / dp;
            Cld s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s += Cld(1) / (z[k] - z[j]);
            Cld step = ratio / (Cld(1) - ratio * s);
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / std::max<long double>(1, std::abs(z[k])));
        }
        if (worst < 1e-18L) break;
    }
    return z;
}

struct Disc {
    ApproxC centre;
    Dyadic radius;
};

/// Newton-polished roots and certified inclusion radii for square-free g.
bool certify(const Poly& g, std::vector<ApproxC>& z, long work, std::vector<Disc>& out) {
    const std::size_t n = static_cast<std::size_t>(g.degree());
    std::vector<Dyadic> cd;
    for (const auto& c : g.coeffs()) cd.push_back(Dyadic::from_rat(c, work, Round::Down));
    for (auto& zk : z) {
        for (int it = 0; it < 200; ++it) {
            ApproxC p{cd[n], Dyadic()}, dp{Dyadic(), Dyadic()};
            for (std::size_t i = n; i-- > 0;) {
                dp = add(mul(dp, zk, work), p, work);
                p = add(mul(p, zk, work), ApproxC{cd[i], Dyadic()}, work);
            }
            if (dp.re.is_zero() && dp.im.is_zero()) break;
            ApproxC step = div(p, dp, work);
            zk = sub(zk, step, work);
            Dyadic sz = max(step.re.sign() < 0 ? -step.re : step.re, step.im.sign() < 0 ? -step.im : step.im);
            if (sz.is_zero() || sz.magnitude() < -work + 8) break;
        }
    }
    // Smith's inclusion: disc(z_k, n |g(z_k)| / |lc prod_{j != k}(z_k - z_j)|).
    long prec = work;
    auto enc = [&](const ApproxC& a) {
        return ComplexEnclosure{Enclosure(a.re, prec), Enclosure(a.im, prec)};
    };
    out.clear();
    for (std::size_t k = 0; k < n; ++k) {
        ComplexEnclosure zk = enc(z[k]);
        ComplexEnclosure p{Enclosure::from_rat(g.coeff(n), prec), Enclosure(Dyadic(), prec)};
        for (std::size_t i = n; i-- > 0;)
            p = p * zk + ComplexEnclosure{Enclosure::from_rat(g.coeff(i), prec), Enclosure(Dyadic(), prec)};
        ComplexEnclosure prod{Enclosure::from_rat(g.leading(), prec), Enclosure(Dyadic(), prec)};
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) prod = prod * (zk - enc(z[j]));
        Enclosure den = modulus(prod);
        if (!den.positive()) return false;
        Enclosure r = Enclosure(Dyadic(static_cast<long>(n)), prec) * modulus(p) / den;
        out.push_back({z[k], r.hi()});
    }
    return true;
}

bool discs_disjoint(const std::vector<Disc>& d, long prec) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            ComplexEnclosure diff{Enclosure(d[i].centre.re, prec) - Enclosure(d[j].centre.re, prec),
                                  Enclosure(d[i].centre.im, prec) - Enclosure(d[j].centre.im, prec)};
            if (!(modulus(diff).lo() > d[i].radius + d[j].radius)) return false;
        }
    return true;
}

}  // namespace

std::vector<ProjectiveRoot> binary_form_roots(const AuxForm& f, long accuracy_bits) {
    if (f.nvars() != 2) throw InvalidInput("binary_form_roots needs a form in two variables");
    if (!f.z_free()) throw InvalidInput("binary_form_roots needs z-free coefficients");
    if (f.is_zero()) throw ZeroForm("binary_form_roots of the zero form");
    if (!f.is_homogeneous()) throw InvalidInput("binary_form_roots needs a homogeneous form");
    const long d = f.deg_x();

    // F(1, x) = sum_i c_i x^i with c_i the coefficient of X0^(d-i) X1^i.
    std::vector<Rat> c(static_cast<std::size_t>(d) + 1);
    for (const auto& [e, p] : f.terms()) c[static_cast<std::size_t>(e[1])] = p.coeff(0);
    Poly affine(c);

    std::vector<ProjectiveRoot> roots;
    const long prec_floor = accuracy_bits + 16;
    Enclosure zero(Dyadic(), prec_floor), one(Dyadic(1), prec_floor);
    if (affine.degree() < d)
        roots.push_back({{zero, zero}, {one, zero}, static_cast<int>(d - affine.degree())});

    auto factors = squarefree_decomposition(affine);
    struct Pending {
        Poly g;
        int mult;
        std::vector<ApproxC> approx;
    };
    std::vector<Pending> pending;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Poly& g = factors[i];
        if (g.degree() < 1) continue;
        Pending pd{g, static_cast<int>(i + 1), {}};
        if (g.degree() >= 2) {
            std::vector<long double> cl;
            for (const auto& v : g.coeffs()) cl.push_back(static_cast<long double>(v.get_d()));
            for (const auto& zc : aberth(cl)) pd.approx.push_back({to_dyadic(zc.real()), to_dyadic(zc.imag())});
        }
        pending.push_back(std::move(pd));
    }

    for (long work = accuracy_bits + 32; work <= 8192; work *= 2) {
        std::vector<ProjectiveRoot> finite;
        std::vector<Disc> all;
        bool ok = true;
        for (auto& pd : pending) {
            if (pd.g.degree() == 1) {
                Rat x = -pd.g.coeff(0) / pd.g.coeff(1);
                Enclosure xe = Enclosure::from_rat(x, work);
                finite.push_back({{one, zero}, {xe, Enclosure(Dyadic(), work)}, pd.mult});
                all.push_back({{xe.mid(), Dyadic()}, xe.width()});
                continue;
            }
            std::vector<Disc> discs;
            if (!certify(pd.g, pd.approx, work, discs)) {
                ok = false;
                break;
            }
            for (const auto& dc : discs) {
                if (dc.radius.is_zero() ? false : dc.radius.magnitude() >= -accuracy_bits - 1) {
                    ok = false;
                    break;
                }
                Enclosure re = Enclosure(dc.centre.re, work).widened(dc.radius);
                Enclosure im = Enclosure(dc.centre.im, work).widened(dc.radius);
                finite.push_back({{one, zero}, {re, im}, pd.mult});
                all.push_back(dc);
            }
            if (!ok) break;
        }
        if (ok && discs_disjoint(all, work)) {
            roots.insert(roots.end(), finite.begin(), finite.end());
            return roots;
        }
    }
    throw PrecisionExhausted("could not separate the roots of the binary form");
}

}  // namespace mahler
