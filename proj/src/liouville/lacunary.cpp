#include "mahler/liouville/lacunary.hpp"

#include "mahler/errors.hpp"

#include <limits>
#include <numeric>

namespace mahler {

ValueEnclosure xi_value(const Enclosure& beta, const ExponentSeq& u, std::size_t terms, bool certified,
                        std::optional<long> precision) {
    const long prec = std::max(precision.value_or(beta.precision()), beta.precision());
    const Enclosure b = beta.with_precision(prec);
    const Enclosure mag = abs(b);
    if (!(mag.hi() < Dyadic(1)))
        throw BetaNotContracting("|beta| upper end " + mag.hi().to_decimal(20, Round::Up) + " is not below 1");

    Enclosure sum(Dyadic(0), prec);
    for (std::size_t n = 0; n < terms; ++n) sum = sum + pow(b, u.value(n));

    // A finite exponent list summed in full has no tail.
    Dyadic t(0);
    if (!u.length() || terms < *u.length()) {
        const Enclosure top(mag.hi(), prec);
        const Enclosure one(Dyadic(1), prec);
        t = (pow(top, u.value(terms)) / (one - top)).hi();
    }
    return ValueEnclosure{sum.widened(t), terms, t.to_rat(), Rat(0), certified, "lacunary"};
}

ValueEnclosure xi_value(const ValueEnclosure& beta, const ExponentSeq& u, std::size_t terms,
                        std::optional<long> precision) {
    return xi_value(beta.value, u, terms, beta.certified, precision);
}

ValueEnclosure xi_value(const Rat& beta, const ExponentSeq& u, std::size_t terms, std::optional<long> precision) {
    const long prec = precision.value_or(Enclosure::kDefaultPrecision);
    ValueEnclosure v = xi_value(Enclosure::from_rat(beta, prec), u, terms, true, prec);
    bool small = true;
    for (std::size_t n = 0; n < terms && small; ++n) small = u.value(n) < Int(1) << 20;
    if (small) v.partial_sum = xi_partial_sum(beta, u, terms);
    return v;
}

Rat xi_partial_sum(const Rat& beta, const ExponentSeq& u, std::size_t terms) {
    Rat sum(0);
    for (std::size_t n = 0; n < terms; ++n) {
        Int e = u.value(n);
        if (e >= Int(1) << 32) throw InvalidInput("exponent too large for an exact partial sum");
        sum += pow(beta, e.get_ui());
    }
    return sum;
}

AuxForm qn_form(const ExponentSeq& u, std::size_t N) {
    const Int uN = u.value(N);
    if (!uN.fits_slong_p()) throw InvalidInput("u_N = " + uN.get_str() + " is too large for a form exponent");
    const long top = uN.get_si();
    AuxForm q(2);
    for (std::size_t n = 0; n <= N; ++n) {
        const long un = u.value(n).get_si();
        q.add_term({un, top - un}, Poly::constant(Rat(1)));
    }
    return q;
}

AuxForm pn_build(const AuxForm& P, const AuxForm& QN, const Int& uN) {
    if (QN.nvars() != 2) throw ArityMismatch("Q_N must be a binary form");
    if (P.nvars() == 0) throw ArityMismatch("P needs at least one variable");
    if (!P.is_homogeneous()) throw InvalidInput("P must be homogeneous");
    if (!uN.fits_slong_p()) throw InvalidInput("u_N too large for a form exponent");
    const std::size_t r = P.nvars() + 1;
    const long un = uN.get_si();

    // Images of the variables of P in X_1..X_r (0-based 0..r-1).
    std::vector<AuxForm> image;
    for (std::size_t i = 0; i + 1 < P.nvars(); ++i) {
        Exponents e(r, 0);
        e[i] = 1;
        e[r - 1] = un;
        AuxForm m(r);
        m.add_term(e, Poly::constant(Rat(1)));
        image.push_back(m);
    }
    AuxForm q(r);
    for (const auto& [e, c] : QN.terms()) {
        Exponents f(r, 0);
        f[r - 2] = e[0];
        f[r - 1] = e[1];
        q.add_term(f, c);
    }
    image.push_back(q);

    AuxForm out(r);
    for (const auto& [e, c] : P.terms()) {
        AuxForm t(r);
        t.add_term(Exponents(r, 0), c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = t * pow(image[i], static_cast<unsigned long>(e[i]));
        out = out + t;
    }
    return out;
}

Enclosure bound_profile_log(const BoundProfile& bp, long d, const Int& H, long precision) {
    if (d < 1 || H < 1) throw InvalidInput("bound profile needs d >= 1 and H >= 1");
    if (bp.c1 <= 0 || bp.tau < 1) throw InvalidInput("bound profile needs c1 > 0 and tau >= 1");
    const long work = precision + 32;
    const Enclosure c1 = Enclosure::from_rat(bp.c1, work);
    const Int dt = pow(Int(d), static_cast<unsigned long>(bp.tau));
    const Int d2 = pow(Int(d), static_cast<unsigned long>(2 * bp.tau + 2));
    Enclosure logH = H == 1 ? Enclosure(Dyadic(0), work) : log(Enclosure::from_rat(Rat(H), work));
    Enclosure e = -(c1 * Enclosure::from_rat(Rat(dt), work) * logH) - c1 * Enclosure::from_rat(Rat(d2), work);
    return e.with_precision(precision);
}

Enclosure bound_profile_eval(const BoundProfile& bp, long d, const Int& H, long precision) {
    return exp(bound_profile_log(bp, d, H, precision + 32)).with_precision(precision);
}

}  // namespace mahler
