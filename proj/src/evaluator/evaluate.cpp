#include "mahler/evaluator/evaluate.hpp"

#include "mahler/errors.hpp"
#include "mahler/mahler/regularity.hpp"
#include "mahler/mahler/series.hpp"

#include <algorithm>

namespace mahler {

namespace {

/// Working precision so that rounding adds at most target/64 to the width.
long working_precision(const Dyadic& target, const Rat& magnitude) {
    long bits = target.is_zero() ? 256 : -target.magnitude() + 8;
    Int whole = ceil(abs(magnitude)) + 1;
    return std::max<long>(Enclosure::kDefaultPrecision, bits + static_cast<long>(bit_length(whole)) + 16);
}

bool zero_solution(const MahlerEquation& eq) {
    if (!eq.homogeneous()) return false;
    for (const auto& s : eq.seeds())
        if (s != 0) return false;
    return eq.seeds().size() >= eq.initial_block();
}

}  // namespace

ValueEnclosure eval_at(const MahlerEquation& eq, const Rat& alpha, const GrowthProfile& profile,
                       const Dyadic& target_width) {
    if (alpha == 0 || abs(alpha) >= 1) throw PointOutOfRange("alpha must satisfy 0 < |alpha| < 1");
    if (target_width.sign() <= 0) throw InvalidInput("target width must be positive");

    if (zero_solution(eq)) {
        // Seeds pin the whole initial block to zero; the recurrence keeps it there.
        ValueEnclosure v{Enclosure(Dyadic(0)), eq.initial_block(), Rat(0), Rat(0), true, "series"};
        return v;
    }

    const Rat r = profile.rho * abs(alpha);
    if (r >= 1)
        throw TailDiverges("rho*|alpha| = " + r.get_str() + " is not below 1");

    // Least N with 2 * tail(N) <= 15/16 * target.
    const Rat budget = target_width.to_rat() * Rat(15, 32);
    Rat tail = profile.kappa * r / (1 - r);
    std::size_t N = 0;
    while (tail > budget) {
        tail *= r;
        ++N;
    }

    const TruncatedSeries s = expand_series(eq, N + 1);
    Rat sum(0);
    for (std::size_t n = s.coeffs.size(); n-- > 0;) sum = sum * alpha + s.coeffs[n];

    const long prec = working_precision(target_width, sum);
    Enclosure value = Enclosure::from_rats(sum - tail, sum + tail, prec);
    return ValueEnclosure{value, N + 1, tail, sum, profile.certified, "series"};
}

ValueEnclosure eval_via_system(const MahlerSystem& sys, const MahlerEquation& eq, const Rat& alpha, std::size_t k,
                               const GrowthProfile& profile, const Dyadic& target_width) {
    const RegularityReport rep = regularity(sys, alpha);
    if (!rep.regular)
        throw NotRegular("alpha = " + alpha.get_str() + " is singular for the system at k = " +
                             std::to_string(*rep.failure_k),
                         *rep.failure_k);
    const std::size_t n = sys.size();
    const std::size_t off = sys.leading_constant ? 1 : 0;
    if (n != eq.order() + off) throw ArityMismatch("system size does not match the equation order");

    // Exact inverses along the orbit alpha, alpha^Q, ..., alpha^{Q^{k-1}}.
    std::vector<RatMatrix> inv;
    Rat x = alpha;
    Rat gain(1);
    for (std::size_t j = 0; j < k; ++j) {
        auto m = inverse(sys.A.at(x));
        if (!m) throw std::logic_error("pullback matrix singular at a regular point");
        Rat norm(0);
        for (std::size_t i = 0; i < n; ++i) {
            Rat row(0);
            for (std::size_t c = 0; c < n; ++c) row += abs((*m)(i, c));
            norm = std::max(norm, row);
        }
        gain *= std::max(norm, Rat(1));
        inv.push_back(std::move(*m));
        x = pow(x, static_cast<unsigned long>(sys.q));
    }

    // Inner target leaves room for the amplification and rounding.
    const long gain_bits = static_cast<long>(bit_length(ceil(gain))) + 2;
    const Dyadic inner = Dyadic(target_width.mantissa(), target_width.exponent() - gain_bits - 2);
    const long prec = working_precision(inner, Rat(1)) + gain_bits + 16;

    std::vector<Enclosure> y;
    std::size_t terms = 0;
    Rat tail(0);
    bool certified = profile.certified;
    if (off) y.push_back(Enclosure(Dyadic(1), prec));
    Rat xj = x;
    for (std::size_t j = 0; j < eq.order(); ++j) {
        ValueEnclosure v = eval_at(eq, xj, profile, inner);
        y.push_back(v.value.with_precision(prec));
        terms = std::max(terms, v.terms_used);
        tail = std::max(tail, v.tail_bound);
        certified = certified && v.certified;
        xj = pow(xj, static_cast<unsigned long>(eq.q()));
    }

    for (std::size_t j = k; j-- > 0;) {
        std::vector<Enclosure> next;
        for (std::size_t i = 0; i < n; ++i) {
            Enclosure acc(Dyadic(0), prec);
            for (std::size_t c = 0; c < n; ++c) {
                const Rat& e = inv[j](i, c);
                if (e != 0) acc = acc + Enclosure::from_rat(e, prec) * y[c];
            }
            next.push_back(acc);
        }
        if (off) next[0] = Enclosure(Dyadic(1), prec);
        y = std::move(next);
    }
    return ValueEnclosure{y[off], terms, tail, Rat(0), certified, "system"};
}

nlohmann::ordered_json to_json(const ValueEnclosure& v, int digits) {
    nlohmann::ordered_json j;
    j["value_lo"] = v.value.lo().is_zero() ? "0" : v.value.lo().to_decimal(digits, Round::Down);
    j["value_hi"] = v.value.hi().is_zero() ? "0" : v.value.hi().to_decimal(digits, Round::Up);
    j["terms_used"] = v.terms_used;
    j["tail_bound"] = v.tail_bound.get_str();
    j["certified"] = v.certified;
    j["route"] = v.route;
    return j;
}

}  // namespace mahler
