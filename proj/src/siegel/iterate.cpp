#include "mahler/siegel/iterate.hpp"

#include "mahler/errors.hpp"
#include "mahler/siegel/aux_form.hpp"

#include <numeric>

namespace mahler {

IterationContext iteration_context(const MahlerEquation& eq) {
    MahlerSystem B = augmented_system(eq);
    Poly a = B.A.denominator_lcm();
    return IterationContext{eq, std::move(B), std::move(a)};
}

namespace {

/// Polynomial matrix a * B, entry by entry.
std::vector<std::vector<Poly>> cleared(const MahlerSystem& B, const Poly& a) {
    const std::size_t n = B.size();
    std::vector<std::vector<Poly>> out(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const RatFun& e = B.A(i, j);
            if (e.is_zero()) continue;
            auto [quo, rem] = divmod(a, e.den());
            if (!rem.is_zero())
                throw ClearingFailure("a(z) = " + to_string(a) + " does not clear the denominator " +
                                      to_string(e.den()) + " of B(" + std::to_string(i) + "," + std::to_string(j) + ")");
            out[i][j] = e.num() * quo;
        }
    return out;
}

AuxForm step(const AuxForm& R, const std::vector<std::vector<Poly>>& aB, const Poly& a, long q, std::size_t N) {
    const std::size_t n = R.nvars();
    // Linear forms L_i = sum_j (aB)_{ij} X_j.
    std::vector<AuxForm> L(n, AuxForm(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!aB[i][j].is_zero()) L[i] = L[i] + variable(n, j).scaled(aB[i][j]);

    AuxForm one(n);
    one.add_term(Exponents(n, 0), Poly::constant(Rat(1)));
    AuxForm out(n);
    std::vector<std::vector<AuxForm>> powers(n);
    for (const auto& [e, c] : R.terms()) {
        const long d = std::accumulate(e.begin(), e.end(), 0L);
        AuxForm t(n);
        t.add_term(Exponents(n, 0), c.compose_power(static_cast<std::size_t>(q)) *
                                        pow(a, static_cast<unsigned long>(static_cast<long>(N) - d)));
        for (std::size_t i = 0; i < n; ++i) {
            if (!e[i]) continue;
            auto& row = powers[i];
            if (row.empty()) row.push_back(one);
            while (static_cast<long>(row.size()) <= e[i]) row.push_back(row.back() * L[i]);
            t = t * row[static_cast<std::size_t>(e[i])];
        }
        out = out + t;
    }
    return out;
}

}  // namespace

AuxForm iterate_aux(const AuxForm& R, const MahlerSystem& B, const Poly& a, std::size_t N, std::size_t k) {
    if (R.nvars() != B.size()) throw ArityMismatch("form arity does not match the system size");
    if (R.deg_x() > static_cast<long>(N)) throw InvalidInput("deg_X(R) exceeds N");
    if (k == 0) return R;
    const auto aB = cleared(B, a);
    AuxForm cur = R;
    for (std::size_t j = 0; j < k; ++j) cur = step(cur, aB, a, B.q, N);
    return cur;
}

Poly iterate_multiplier(const Poly& a, long q, std::size_t k) {
    Poly out = Poly::constant(Rat(1));
    std::size_t s = 1;
    for (std::size_t j = 0; j < k; ++j) {
        out *= a.compose_power(s);
        s *= static_cast<std::size_t>(q);
    }
    return out;
}

IdentityCheck check_iterate_identity(const AuxForm& R, const AuxForm& Rk, const IterationContext& ctx, std::size_t N,
                                     std::size_t k, std::size_t order) {
    const long q = ctx.B.q;
    const std::vector<TruncatedSeries> y = solution_vector(ctx.eq, order, true);
    std::vector<Poly> yz, yk;
    std::size_t s = 1;
    for (std::size_t j = 0; j < k; ++j) s *= static_cast<std::size_t>(q);
    for (const auto& c : y) {
        yz.push_back(c.as_poly());
        yk.push_back(c.as_poly().compose_power(s).truncated(order));
    }
    const Poly lhs = substitute_form(Rk, yz, order);
    const Poly ak = pow_trunc(iterate_multiplier(ctx.a, q, k), static_cast<unsigned long>(N), order);
    const Poly rhs = mul_trunc(ak, substitute_form(R.compose_z_power(s), yk, order), order);
    const Poly diff = lhs - rhs;
    if (diff.is_zero()) return IdentityCheck{true, std::nullopt};
    return IdentityCheck{false, diff.valuation()};
}

}  // namespace mahler
