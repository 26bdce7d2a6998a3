#include "mahler/mahler/series.hpp"

#include "mahler/algebra/matrix.hpp"
#include "mahler/errors.hpp"

#include <algorithm>
#include <limits>

namespace mahler {

TruncatedSeries TruncatedSeries::compose_power(std::size_t k) const {
    TruncatedSeries out;
    out.q = q;
    if (coeffs.empty()) return out;
    out.coeffs.assign((coeffs.size() - 1) * k + 1, Rat(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i * k] = coeffs[i];
    // Entries up to k*N - 1 are exact: the next unknown sits at z^{kN}.
    out.coeffs.resize(coeffs.size() * k, Rat(0));
    return out;
}

std::string Valuation::to_string() const {
    switch (kind) {
        case Kind::Exact: return std::to_string(value);
        case Kind::AtLeast: return ">=" + std::to_string(value);
        case Kind::Infinite: return "inf";
    }
    return "?";
}

namespace {

/// Contributions (j, i, power) with a_j[i] != 0, i.e. a_j[i] z^i f(z^{q^j}).
struct Term {
    std::size_t i;
    unsigned long long step;  // q^j
    Rat c;
};

std::vector<Term> collect_terms(const MahlerEquation& eq) {
    std::vector<Term> out;
    unsigned long long step = 1;
    for (std::size_t j = 0; j < eq.coeffs().size(); ++j) {
        const auto& a = eq.coeff(j).coeffs();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) out.push_back({i, step, a[i]});
        if (j + 1 < eq.coeffs().size()) {
            if (step > std::numeric_limits<unsigned long long>::max() / static_cast<unsigned long long>(eq.q()))
                throw InvalidInput("equation order too large for the base");
            step *= static_cast<unsigned long long>(eq.q());
        }
    }
    return out;
}

/// Solves the initial block against the seeds; returns u(0..block-1).
std::vector<Rat> solve_initial_block(const MahlerEquation& eq, const std::vector<Term>& terms, std::size_t block) {
    const std::size_t v0 = eq.coeff(0).valuation();
    const std::size_t neq = block + v0;  // equations for z^0 .. z^{block-1+v0}
    const auto& seeds = eq.seeds();
    const std::size_t fixed = std::min(seeds.size(), block);

    // Row e: sum_k M[e][k] u(k) = b_e, restricted to unknown columns.
    const std::size_t unknown = block - fixed;
    RatMatrix aug(neq, unknown + 1);
    for (std::size_t e = 0; e < neq; ++e) {
        Rat rhs = eq.rhs().coeff(e);
        for (const auto& t : terms) {
            if (t.i > e || (e - t.i) % t.step != 0) continue;
            std::size_t k = (e - t.i) / t.step;
            if (k >= block) continue;  // cannot happen for e < neq
            if (k < fixed)
                rhs -= t.c * seeds[k];
            else
                aug(e, k - fixed) += t.c;
        }
        aug(e, unknown) = rhs;
    }

    // Gauss-Jordan on the augmented system.
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < unknown && row < neq; ++col) {
        std::size_t p = row;
        while (p < neq && aug(p, col) == 0) ++p;
        if (p == neq) continue;
        for (std::size_t j = 0; j <= unknown; ++j) std::swap(aug(p, j), aug(row, j));
        Rat inv = 1 / aug(row, col);
        for (std::size_t j = 0; j <= unknown; ++j) aug(row, j) *= inv;
        for (std::size_t i = 0; i < neq; ++i) {
            if (i == row || aug(i, col) == 0) continue;
            Rat f = aug(i, col);
            for (std::size_t j = 0; j <= unknown; ++j) aug(i, j) -= f * aug(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < neq; ++i)
        if (aug(i, unknown) != 0)
            throw InconsistentSeeds("seeds contradict the equation at order " + std::to_string(i) +
                                    " of the initial block");
    if (pivot_col.size() < unknown) {
        std::size_t missing = unknown - pivot_col.size();
        throw Underdetermined("initial block has " + std::to_string(missing) +
                                  " free coefficient(s); supply seeds up to index " +
                                  std::to_string(block - 1),
                              missing);
    }
    std::vector<Rat> u(block);
    for (std::size_t k = 0; k < fixed; ++k) u[k] = seeds[k];
    for (std::size_t r = 0; r < pivot_col.size(); ++r) u[fixed + pivot_col[r]] = aug(r, unknown);
    return u;
}

}  // namespace

TruncatedSeries expand_series(const MahlerEquation& eq, std::size_t n) {
    const auto terms = collect_terms(eq);
    const std::size_t v0 = eq.coeff(0).valuation();
    const Rat lead = eq.coeff(0).coeff(v0);
    if (lead == 0) throw std::logic_error("degenerate leading coefficient");
    const std::size_t block = eq.initial_block();
    const std::size_t target = std::max({n, eq.seeds().size(), block});

    std::vector<Rat> u = solve_initial_block(eq, terms, block);
    u.resize(target);
    for (std::size_t k = block; k < target; ++k) {
        const std::size_t e = k + v0;
        Rat acc = eq.rhs().coeff(e);
        for (const auto& t : terms) {
            if (t.i > e || (e - t.i) % t.step != 0) continue;
            std::size_t idx = (e - t.i) / t.step;
            if (t.step == 1 && t.i == v0) continue;  // the unknown u(k) itself
            acc -= t.c * u[idx];
        }
        u[k] = acc / lead;
        if (k < eq.seeds().size() && eq.seeds()[k] != u[k])
            throw InconsistentSeeds("seed u(" + std::to_string(k) + ") = " + eq.seeds()[k].get_str() +
                                    " but the equation forces " + u[k].get_str());
    }
    u.resize(n);
    return TruncatedSeries{std::move(u), eq.q()};
}

Valuation verify_equation(const MahlerEquation& eq, const TruncatedSeries& s) {
    const std::size_t n = s.guaranteed_order();
    // a_j(z) s(z^{q^j}) is exact below q^j n + val(a_j).
    std::size_t window = std::numeric_limits<std::size_t>::max();
    std::size_t step = 1;
    Poly residual = -eq.rhs();
    const Poly sp = s.as_poly();
    for (std::size_t j = 0; j < eq.coeffs().size(); ++j) {
        const Poly& a = eq.coeff(j);
        window = std::min(window, step * n + a.valuation());
        residual += a * sp.compose_power(step);
        step *= static_cast<std::size_t>(eq.q());
    }
    if (residual.is_zero()) return Valuation::infinite();
    std::size_t first = residual.valuation();
    if (first < window) return Valuation::exact(static_cast<long>(first));
    return Valuation::at_least(static_cast<long>(window));
}

}  // namespace mahler
