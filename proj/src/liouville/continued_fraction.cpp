#include "mahler/liouville/continued_fraction.hpp"

#include "mahler/errors.hpp"

namespace mahler {

ContinuedFraction continued_fraction(const Rat& lo_in, const Rat& hi_in, std::size_t max_terms) {
    if (hi_in < lo_in) throw InvalidInput("continued fraction of an empty interval");
    ContinuedFraction cf;
    Rat lo = lo_in, hi = hi_in;
    for (;;) {
        cf.width = hi - lo;
        if (cf.quotients.size() >= max_terms) {
            cf.stop = ContinuedFraction::Stop::MaxTerms;
            return cf;
        }
        Int a = floor(lo);
        if (floor(hi) != a) {
            cf.stop = ContinuedFraction::Stop::Ambiguous;
            return cf;
        }
        Rat flo = lo - a, fhi = hi - a;
        if (fhi == 0) {
            // Interval is the single integer a.
            cf.quotients.push_back(a);
            cf.width = 0;
            cf.stop = ContinuedFraction::Stop::Exact;
            return cf;
        }
        if (flo == 0) {
            // a itself and points just above it expand differently.
            cf.stop = ContinuedFraction::Stop::Ambiguous;
            return cf;
        }
        cf.quotients.push_back(a);
        lo = 1 / fhi;
        hi = 1 / flo;
    }
}

ContinuedFraction continued_fraction(const Enclosure& x, std::size_t max_terms) {
    return continued_fraction(x.lo().to_rat(), x.hi().to_rat(), max_terms);
}

ContinuedFraction continued_fraction(const Rat& x, std::size_t max_terms) {
    return continued_fraction(x, x, max_terms);
}

std::string to_string(ContinuedFraction::Stop s) {
    switch (s) {
        case ContinuedFraction::Stop::Exact: return "exact";
        case ContinuedFraction::Stop::Ambiguous: return "ambiguous";
        case ContinuedFraction::Stop::MaxTerms: return "max_terms";
    }
    return "";
}

}  // namespace mahler
