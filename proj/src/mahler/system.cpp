#include "mahler/mahler/system.hpp"

#include "mahler/errors.hpp"

#include <algorithm>
#include <limits>

namespace mahler {

MahlerSystem make_system(long q, MatRF A) {
    if (q < 2) throw InvalidInput("Mahler base q must be at least 2");
    if (!A.square() || A.rows() == 0) throw InvalidInput("system matrix must be square and nonempty");
    if (A.determinant().is_zero()) throw InvalidInput("system matrix is singular over Q(z)");
    return MahlerSystem{q, std::move(A), MahlerSystem::Provenance::Raw, false};
}

MahlerSystem companion_system(const MahlerEquation& eq) {
    const std::size_t m = eq.order();
    if (m == 0) throw InvalidInput("order-0 equation has no companion system");
    const RatFun am(eq.coeff(m));
    const bool inhom = !eq.homogeneous();
    const std::size_t off = inhom ? 1 : 0;
    const std::size_t n = m + off;

    MatRF A(n, n);
    if (inhom) A(0, 0) = RatFun::constant(Rat(1));
    for (std::size_t i = 0; i + 1 < m; ++i) A(off + i, off + i + 1) = RatFun::constant(Rat(1));
    const std::size_t last = n - 1;
    if (inhom) A(last, 0) = RatFun(eq.rhs()) / am;
    for (std::size_t i = 0; i < m; ++i) A(last, off + i) = -(RatFun(eq.coeff(i)) / am);

    return MahlerSystem{eq.q(), std::move(A), MahlerSystem::Provenance::Companion, inhom};
}

MahlerSystem augmented_system(const MahlerEquation& eq) {
    MahlerSystem sys = companion_system(eq);
    if (sys.leading_constant) return sys;
    sys.A = block_diagonal({MatRF::identity(1), sys.A});
    sys.leading_constant = true;
    return sys;
}

MahlerSystem direct_sum(const std::vector<MahlerSystem>& systems) {
    if (systems.empty()) throw InvalidInput("direct sum of no systems");
    std::vector<MatRF> blocks;
    for (const auto& s : systems) {
        if (s.q != systems.front().q)
            throw MixedBase("cannot sum systems with bases " + std::to_string(systems.front().q) + " and " +
                            std::to_string(s.q));
        blocks.push_back(s.A);
    }
    return MahlerSystem{systems.front().q, block_diagonal(blocks), MahlerSystem::Provenance::DirectSum,
                        systems.front().leading_constant};
}

MahlerSystem iterate_system(const MahlerSystem& sys, std::size_t l) {
    if (l == 0) throw InvalidInput("iteration count must be at least 1");
    if (l == 1) return sys;
    MatRF P = sys.A;
    std::size_t step = 1;
    long qn = sys.q;
    for (std::size_t j = 1; j < l; ++j) {
        step *= static_cast<std::size_t>(sys.q);
        if (qn > std::numeric_limits<long>::max() / sys.q) throw InvalidInput("iterated base overflows");
        qn *= sys.q;
        P = sys.A.compose_power(step) * P;
    }
    return MahlerSystem{qn, std::move(P), MahlerSystem::Provenance::Iterate, sys.leading_constant};
}

std::vector<TruncatedSeries> solution_vector(const MahlerEquation& eq, std::size_t order, bool with_constant) {
    const TruncatedSeries f = expand_series(eq, order);
    std::vector<TruncatedSeries> y;
    if (with_constant) {
        TruncatedSeries one{std::vector<Rat>(order, Rat(0)), eq.q()};
        if (order > 0) one.coeffs[0] = 1;
        y.push_back(std::move(one));
    }
    std::size_t step = 1;
    for (std::size_t j = 0; j < eq.order(); ++j) {
        TruncatedSeries c = f.compose_power(step);
        c.coeffs.resize(order);
        y.push_back(std::move(c));
        step *= static_cast<std::size_t>(eq.q());
    }
    return y;
}

Valuation system_residual(const MahlerSystem& sys, const std::vector<TruncatedSeries>& y) {
    const std::size_t n = sys.size();
    if (y.size() != n) throw InvalidInput("solution vector has the wrong dimension");
    const Poly d = sys.A.denominator_lcm();
    std::optional<std::size_t> exact;
    std::size_t window = std::numeric_limits<std::size_t>::max();
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ni = y[i].guaranteed_order();
        Poly row = d * y[i].as_poly().compose_power(static_cast<std::size_t>(sys.q));
        std::size_t w = ni * static_cast<std::size_t>(sys.q) + d.valuation();
        for (std::size_t j = 0; j < n; ++j) {
            const RatFun& e = sys.A(i, j);
            if (e.is_zero()) continue;
            Poly c = e.num() * divmod(d, e.den()).first;
            row -= c * y[j].as_poly();
            w = std::min(w, y[j].guaranteed_order() + c.valuation());
        }
        window = std::min(window, w);
        if (row.is_zero()) continue;
        all_zero = false;
        if (row.valuation() < w) exact = std::min(exact.value_or(row.valuation()), row.valuation());
    }
    if (all_zero) return Valuation::infinite();
    if (exact && *exact < window) return Valuation::exact(static_cast<long>(*exact));
    return Valuation::at_least(static_cast<long>(window));
}

std::string to_string(MahlerSystem::Provenance p) {
    switch (p) {
        case MahlerSystem::Provenance::Raw: return "raw";
        case MahlerSystem::Provenance::Companion: return "companion";
        case MahlerSystem::Provenance::DirectSum: return "direct-sum";
        case MahlerSystem::Provenance::Iterate: return "iterate";
    }
    return "raw";
}

}  // namespace mahler
