#include "mahler/liouville/exponents.hpp"

#include "mahler/errors.hpp"

namespace mahler {

ExponentSeq ExponentSeq::explicit_list(std::vector<Int> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= 0) throw InvalidInput("exponents must be positive");
        if (i > 0 && values[i] <= values[i - 1]) throw InvalidInput("exponents must be strictly increasing");
    }
    ExponentSeq s;
    s.kind_ = Kind::Explicit;
    s.values_ = std::move(values);
    return s;
}

ExponentSeq ExponentSeq::tower(unsigned long b, unsigned long c) {
    if (b < 2 || c < 2) throw InvalidInput("tower(b, c) needs b >= 2 and c >= 2");
    ExponentSeq s;
    s.kind_ = Kind::Tower;
    s.b_ = b;
    s.c_ = c;
    return s;
}

ExponentSeq ExponentSeq::factorial() {
    ExponentSeq s;
    s.kind_ = Kind::Factorial;
    return s;
}

Int ExponentSeq::value(std::size_t n) const {
    switch (kind_) {
        case Kind::Explicit:
            if (n >= values_.size())
                throw InvalidInput("explicit exponent list has only " + std::to_string(values_.size()) + " terms");
            return values_[n];
        case Kind::Tower: {
            Int e = pow(Int(c_), n);
            if (!e.fits_ulong_p()) throw InvalidInput("tower exponent too large to materialize");
            return pow(Int(b_), e.get_ui());
        }
        case Kind::Factorial: {
            Int f;
            mpz_fac_ui(f.get_mpz_t(), n + 1);
            return f;
        }
    }
    return Int(0);
}

std::optional<std::size_t> ExponentSeq::length() const {
    if (kind_ == Kind::Explicit) return values_.size();
    return std::nullopt;
}

std::string ExponentSeq::describe() const {
    switch (kind_) {
        case Kind::Explicit: {
            std::string s = "explicit[";
            for (std::size_t i = 0; i < values_.size(); ++i) s += (i ? "," : "") + values_[i].get_str();
            return s + "]";
        }
        case Kind::Tower: return "tower(" + std::to_string(b_) + "," + std::to_string(c_) + ")";
        case Kind::Factorial: return "factorial";
    }
    return "";
}

GrowthCheck growth_check(const ExponentSeq& u, const Rat& C, std::size_t upto) {
    if (upto < 1) throw InvalidInput("growth check needs upto >= 1");
    if (C <= 0) throw InvalidInput("growth exponent C must be positive");
    const Int p = C.get_num();
    const Int r = C.get_den();
    if (!p.fits_ulong_p() || !r.fits_ulong_p()) throw InvalidInput("growth exponent too large");
    GrowthCheck out;
    out.C = C;
    out.all_hold = true;
    out.increasing = true;
    Int prev = u.value(0);
    for (std::size_t n = 0; n < upto; ++n) {
        Int next = u.value(n + 1);
        Int lhs = pow(next, r.get_ui());
        Int rhs = pow(prev, p.get_ui());
        GrowthStep step{n, lhs > rhs, Rat(lhs, rhs)};
        step.ratio.canonicalize();
        if (!step.holds) out.all_hold = false;
        if (!out.steps.empty() && step.ratio <= out.steps.back().ratio) out.increasing = false;
        out.steps.push_back(std::move(step));
        prev = std::move(next);
    }
    return out;
}

}  // namespace mahler
