#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mahler/errors.hpp"
#include "mahler/siegel/aux_form.hpp"
#include "mahler/siegel/iterate.hpp"
#include "mahler/siegel/multiplicity.hpp"
#include "oracles.hpp"

#include <set>

using namespace mahler;

namespace {

TruncatedSeries series_of(const std::string& name, std::size_t n) { return expand_series(oracle::load(name), n); }

/// Independent composition: sum over terms of c(z) * f^{e_1} mod z^order by
/// schoolbook products of coefficient vectors.
std::vector<Rat> compose_naive(const AuxForm& R, const std::vector<Rat>& f, std::size_t order) {
    std::vector<Rat> out(order, Rat(0));
    for (const auto& [e, c] : R.terms()) {
        std::vector<Rat> acc(order, Rat(0));
        for (std::size_t i = 0; i < order && i < c.coeffs().size(); ++i) acc[i] = c.coeffs()[i];
        for (long k = 0; k < e[1]; ++k) {
            std::vector<Rat> next(order, Rat(0));
            for (std::size_t i = 0; i < order; ++i)
                if (acc[i] != 0)
                    for (std::size_t j = 0; i + j < order && j < f.size(); ++j) next[i + j] += acc[i] * f[j];
            acc = std::move(next);
        }
        for (std::size_t i = 0; i < order; ++i) out[i] += acc[i];
    }
    return out;
}

}  // namespace

TEST_CASE("unknown count") {
    CHECK(aux_unknowns(1, 4, 4) == 25);
    CHECK(aux_unknowns(2, 0, 2) == 6);
    CHECK(aux_unknowns(1, 1, 1) == 4);
}

TEST_CASE("aux_form for the powers-of-two series") {
    const auto s = series_of("powers2", 64);
    const AuxResult r = aux_form({s}, 4, 24);
    CHECK(r.unknowns == 25);
    CHECK(r.conditions == 24);
    CHECK(r.kernel_dim >= 1);
    CHECK_FALSE(r.form.is_zero());
    CHECK(r.form.is_integral());
    CHECK(r.form.is_homogeneous());
    CHECK(r.form.deg_x() == 4);
    CHECK(r.form.deg_z() <= 4);
    CHECK_FALSE(r.zero_composition);
    CHECK(r.achieved.at_least_as(24));

    const auto naive = compose_naive(r.form, s.coeffs, 24);
    for (const Rat& c : naive) CHECK(c == 0);
}

TEST_CASE("dependent input gives a zero composition") {
    TruncatedSeries z;
    z.coeffs = {Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    const AuxResult r = aux_form({z}, 1, 3);
    CHECK(r.unknowns == 4);
    CHECK_FALSE(r.form.is_zero());
    CHECK(r.zero_composition);
    CHECK_FALSE(r.achieved.is_exact());
}

TEST_CASE("aux_form preconditions") {
    const auto s = series_of("powers2", 64);
    CHECK_THROWS_AS(aux_form({s}, 2, 40), InvalidInput);
    CHECK_THROWS_AS(aux_form({series_of("powers2", 10)}, 4, 24), InsufficientTruncation);
    CHECK_THROWS_AS(aux_form({s, series_of("powers3", 64)}, 2), MixedBase);
    const AuxResult two = aux_form({s, series_of("thue_morse", 64)}, 2);
    CHECK(two.form.nvars() == 3);
    CHECK(two.achieved.at_least_as(static_cast<long>(two.conditions)));
}

TEST_CASE("achieved_valuation") {
    const auto s = series_of("powers2", 32);
    CHECK(achieved_valuation(variable(2, 1), {s}) == Valuation::exact(1));
    CHECK(achieved_valuation(variable(2, 0), {s}) == Valuation::exact(0));
    AuxForm r = variable(2, 1);
    r.add_term({1, 0}, Poly{Rat(0), Rat(-1)});
    CHECK(achieved_valuation(r, {s}) == Valuation::exact(2));
    CHECK(achieved_valuation(r, {s}, 1) == Valuation::at_least(1));
}

TEST_CASE("form JSON round trip") {
    const AuxResult r = aux_form({series_of("thue_morse", 64)}, 3);
    const auto j = form_to_json(r.form);
    CHECK(j["nvars"] == 2);
    CHECK(form_from_json(j) == r.form);
}

TEST_CASE("iterate_aux") {
    const auto ctx = iteration_context(oracle::load("powers2"));
    CHECK(ctx.a == Poly::constant(Rat(1)));
    const AuxForm x1 = variable(2, 1);
    CHECK(iterate_aux(x1, ctx.B, ctx.a, 1, 0) == x1);
    AuxForm expect = x1;
    expect.add_term({1, 0}, Poly{Rat(0), Rat(-1)});
    CHECK(iterate_aux(x1, ctx.B, ctx.a, 1, 1) == expect);
    CHECK_THROWS_AS(iterate_aux(pow(x1, 3), ctx.B, ctx.a, 2, 1), InvalidInput);
    CHECK(iterate_multiplier(Poly{Rat(1), Rat(1)}, 2, 2) == Poly{Rat(1), Rat(1), Rat(1), Rat(1)});
    CHECK(iterate_multiplier(Poly{Rat(1), Rat(1)}, 2, 0) == Poly::constant(Rat(1)));
}

TEST_CASE("clearing failure") {
    const auto ctx = iteration_context(oracle::load("thue_morse"));
    CHECK(ctx.a.degree() == 3);
    CHECK_THROWS_AS(iterate_aux(variable(2, 1), ctx.B, Poly::constant(Rat(1)), 1, 1), ClearingFailure);
}

TEST_CASE("iterate identity on Thue-Morse and powers of two") {
    for (const char* name : {"thue_morse", "powers2"}) {
        const auto eq = oracle::load(name);
        const auto ctx = iteration_context(eq);
        const AuxResult r = aux_form({expand_series(eq, 64)}, 2);
        for (std::size_t k = 0; k <= 3; ++k) {
            const AuxForm rk = iterate_aux(r.form, ctx.B, ctx.a, 2, k);
            const IdentityCheck c = check_iterate_identity(r.form, rk, ctx, 2, k, 256);
            CHECK_MESSAGE(c.holds, name << " k=" << k);
        }
    }
}

TEST_CASE("perturbed iterate is caught") {
    const auto eq = oracle::load("thue_morse");
    const auto ctx = iteration_context(eq);
    const AuxResult r = aux_form({expand_series(eq, 64)}, 2);
    AuxForm rk = iterate_aux(r.form, ctx.B, ctx.a, 2, 2);
    rk.add_term({2, 0}, Poly::monomial(Rat(1), 17));
    const IdentityCheck c = check_iterate_identity(r.form, rk, ctx, 2, 2, 256);
    CHECK_FALSE(c.holds);
    REQUIRE(c.first_mismatch);
    CHECK(*c.first_mismatch == 17);
}

TEST_CASE("multiplicity scan") {
    MultiplicityConfig cfg;
    cfg.mmax = 3;
    cfg.nmax = 3;
    cfg.trials = 4;
    cfg.seed = 9;
    const auto eqs = std::vector<MahlerEquation>{oracle::load("powers2")};
    const auto r = multiplicity_scan(eqs, cfg);
    CHECK(r.t == 1);
    CHECK(r.rows.size() == 9 * 5);
    REQUIRE(r.c_fit);
    Rat best = 0;
    for (const auto& row : r.rows) {
        CHECK(row.achieved_val.has_value());
        if (row.achieved_val) {
            CHECK(row.ratio == Rat(*row.achieved_val) / Rat(long(row.M * row.N)));
            if (row.ratio > best) best = row.ratio;
        }
    }
    CHECK(*r.c_fit == best);

    const auto again = multiplicity_scan(eqs, cfg);
    CHECK(multiplicity_csv(again) == multiplicity_csv(r));
    cfg.workers = 4;
    CHECK(multiplicity_csv(multiplicity_scan(eqs, cfg)) == multiplicity_csv(r));
    cfg.seed = 10;
    CHECK(multiplicity_csv(multiplicity_scan(eqs, cfg)) != multiplicity_csv(r));
}

TEST_CASE("trial seeds are distinct") {
    std::set<std::uint64_t> seen;
    for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t n = 1; n <= 6; ++n)
            for (std::size_t t = 0; t < 8; ++t) seen.insert(trial_seed(1, m, n, t));
    CHECK(seen.size() == 6 * 6 * 8);
    CHECK(trial_seed(1, 2, 3, 4) == trial_seed(1, 2, 3, 4));
}

TEST_CASE("multiplicity CSV layout") {
    MultiplicityConfig cfg;
    cfg.mmax = 1;
    cfg.nmax = 1;
    cfg.trials = 1;
    const auto csv = multiplicity_csv(multiplicity_scan({series_of("thue_morse", 256)}, cfg));
    CHECK(csv.rfind("M,N,trial,seed,achieved_val,ratio_num,ratio_den,flag\n", 0) == 0);
    CHECK(csv.find(",aux\n") != std::string::npos);
}
