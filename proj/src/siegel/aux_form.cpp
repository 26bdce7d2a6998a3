#include "mahler/siegel/aux_form.hpp"

#include "mahler/algebra/matrix.hpp"
#include "mahler/algebra/parse.hpp"
#include "mahler/errors.hpp"

#include <algorithm>
#include <limits>

namespace mahler {

namespace {

/// All exponent vectors of total degree d in k variables, lexicographic.
void homogeneous_exponents(std::size_t k, long d, Exponents& cur, std::vector<Exponents>& out) {
    if (cur.size() + 1 == k) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long e = d; e >= 0; --e) {
        cur.push_back(e);
        homogeneous_exponents(k, d - e, cur, out);
        cur.pop_back();
    }
}

std::vector<Exponents> homogeneous_exponents(std::size_t k, long d) {
    std::vector<Exponents> out;
    Exponents cur;
    homogeneous_exponents(k, d, cur, out);
    return out;
}

std::size_t min_order(const std::vector<TruncatedSeries>& series) {
    std::size_t w = std::numeric_limits<std::size_t>::max();
    for (const auto& s : series) w = std::min(w, s.guaranteed_order());
    return w;
}

void check_bases(const std::vector<TruncatedSeries>& series) {
    std::optional<long> q;
    for (const auto& s : series) {
        if (!s.q) continue;
        if (q && *q != *s.q)
            throw MixedBase("series come from Mahler equations with bases " + std::to_string(*q) + " and " +
                            std::to_string(*s.q));
        q = s.q;
    }
}

}  // namespace

Poly substitute_form(const AuxForm& R, const std::vector<Poly>& y, std::size_t order) {
    if (y.size() != R.nvars()) throw ArityMismatch("substitution has the wrong number of coordinates");
    std::vector<std::vector<Poly>> powers(y.size(), {Poly::constant(Rat(1)).truncated(order)});
    auto power = [&](std::size_t i, long e) -> const Poly& {
        auto& row = powers[i];
        while (static_cast<long>(row.size()) <= e) row.push_back(mul_trunc(row.back(), y[i], order));
        return row[static_cast<std::size_t>(e)];
    };
    Poly sum;
    for (const auto& [e, c] : R.terms()) {
        Poly t = c.truncated(order);
        for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i)
            if (e[i]) t = mul_trunc(t, power(i, e[i]), order);
        sum += t;
    }
    return sum;
}

Poly compose_form(const AuxForm& R, const std::vector<Poly>& y, std::size_t order) {
    std::vector<Poly> full;
    full.reserve(y.size() + 1);
    full.push_back(Poly::constant(Rat(1)));
    full.insert(full.end(), y.begin(), y.end());
    return substitute_form(R, full, order);
}

Valuation achieved_valuation(const AuxForm& R, const std::vector<TruncatedSeries>& series, std::size_t window) {
    if (R.nvars() != series.size() + 1) throw ArityMismatch("form arity does not match 1 + number of series");
    window = std::min(window, min_order(series));
    std::vector<Poly> y;
    for (const auto& s : series) y.push_back(Poly(std::vector<Rat>(s.coeffs.begin(), s.coeffs.begin() + static_cast<long>(window))));
    Poly c = compose_form(R, y, window);
    if (c.is_zero()) return Valuation::at_least(static_cast<long>(window));
    return Valuation::exact(static_cast<long>(c.valuation()));
}

Valuation achieved_valuation(const AuxForm& R, const std::vector<TruncatedSeries>& series) {
    return achieved_valuation(R, series, std::numeric_limits<std::size_t>::max());
}

std::size_t aux_unknowns(std::size_t t, std::size_t m, std::size_t n) {
    // C(n + t, t) monomials of degree n in t + 1 variables.
    Int binom;
    mpz_bin_uiui(binom.get_mpz_t(), n + t, t);
    return (m + 1) * binom.get_ui();
}

AuxResult aux_form(const std::vector<TruncatedSeries>& series, std::size_t n, std::optional<std::size_t> conditions,
                   std::optional<std::size_t> m) {
    if (series.empty()) throw InvalidInput("aux_form needs at least one series");
    check_bases(series);
    const std::size_t t = series.size();
    const std::size_t mz = m.value_or(n);
    const std::size_t unknowns = aux_unknowns(t, mz, n);
    const std::size_t v = conditions.value_or(unknowns - 1);
    if (v >= unknowns)
        throw InvalidInput(std::to_string(v) + " conditions leave no free unknowns among " + std::to_string(unknowns));
    const std::size_t window = min_order(series);
    if (window <= v + n)
        throw InsufficientTruncation("series are exact to order " + std::to_string(window) + ", need more than " +
                                     std::to_string(v + n));

    const auto monomials = homogeneous_exponents(t + 1, static_cast<long>(n));
    std::vector<Poly> y;
    for (const auto& s : series) y.push_back(Poly(std::vector<Rat>(s.coeffs.begin(), s.coeffs.begin() + static_cast<long>(v))));

    // Column (e, i): z^i * prod f_k^{e_k}, coefficients of z^0..z^{v-1}.
    RatMatrix mat(v, unknowns);
    std::size_t col = 0;
    for (const auto& e : monomials) {
        AuxForm mono(t + 1);
        mono.add_term(e, Poly::constant(Rat(1)));
        const Poly base = substitute_form(mono, [&] {
            std::vector<Poly> full{Poly::constant(Rat(1))};
            full.insert(full.end(), y.begin(), y.end());
            return full;
        }(), v);
        for (std::size_t i = 0; i <= mz; ++i, ++col)
            for (std::size_t r = i; r < v; ++r) mat(r, col) = base.coeff(r - i);
    }

    const auto kernel = kernel_basis(mat);
    if (kernel.empty()) throw std::logic_error("kernel empty despite unknowns exceeding conditions");

    AuxResult out;
    out.unknowns = unknowns;
    out.conditions = v;
    out.kernel_dim = kernel.size();
    auto build = [&](const std::vector<Int>& vec) {
        AuxForm f(t + 1);
        std::size_t c = 0;
        for (const auto& e : monomials) {
            std::vector<Rat> coeffs(mz + 1);
            for (std::size_t i = 0; i <= mz; ++i, ++c) coeffs[i] = Rat(vec[c]);
            f.add_term(e, Poly(std::move(coeffs)));
        }
        return f.primitive();
    };
    for (const auto& vec : kernel) {
        AuxForm f = build(vec);
        Valuation val = Valuation::at_least(0);
        for (std::size_t w = std::min(window, 2 * (v + n) + 2);; w = std::min(window, 2 * w)) {
            val = achieved_valuation(f, series, w);
            if (val.is_exact() || w == window) break;
        }
        if (val.is_exact()) {
            out.form = std::move(f);
            out.achieved = val;
            return out;
        }
        if (out.form.nvars() == 0) {
            out.form = f;
            out.achieved = val;
        }
    }
    out.zero_composition = true;
    return out;
}

nlohmann::ordered_json form_to_json(const AuxForm& f) {
    nlohmann::ordered_json j;
    j["nvars"] = f.nvars();
    j["deg_X"] = f.deg_x();
    j["deg_z"] = f.deg_z();
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [e, c] : f.terms()) j["terms"].push_back({{"exps", e}, {"poly", to_string(c)}});
    return j;
}

AuxForm form_from_json(const nlohmann::ordered_json& doc) {
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw InvalidInput("form document needs a 'terms' array");
    std::size_t nvars = doc.value("nvars", std::size_t{0});
    if (nvars == 0 && !doc["terms"].empty()) nvars = doc["terms"][0]["exps"].size();
    AuxForm f(nvars);
    for (const auto& term : doc["terms"]) {
        Exponents e = term.at("exps").get<Exponents>();
        if (e.size() != nvars) throw ArityMismatch("term exponent vector has the wrong length");
        f.add_term(e, parse_poly(term.at("poly").get<std::string>()));
    }
    return f;
}

}  // namespace mahler
