#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mahler/errors.hpp"
#include "mahler/evaluator/evaluate.hpp"
#include "oracles.hpp"

using namespace mahler;

namespace {

const DeclaredBound kZeroOne{Rat(1), Rat(1), "coefficients in {0,1}"};

GrowthProfile declared(const MahlerEquation& eq) { return growth_profile(expand_series(eq, 256), kZeroOne); }

Rat powers_partial(const Rat& a, unsigned terms) {
    Rat s = 0;
    for (unsigned n = 0; n < terms; ++n) s += pow(a, 1UL << n);
    return s;
}

}  // namespace

TEST_CASE("declared profiles") {
    const auto tm = expand_series(oracle::load("thue_morse"), 128);
    const auto p = growth_profile(tm, kZeroOne);
    CHECK(p.certified);
    CHECK(p.verified_to == 127);
    CHECK(p.reason == kZeroOne.reason);
    CHECK(declared(oracle::load("powers2")).certified);

    const auto cantor = expand_series(oracle::load("cantor5"), 128);
    CHECK_THROWS_AS(growth_profile(cantor, kZeroOne), DeclaredBoundViolated);
    try {
        growth_profile(cantor, kZeroOne);
    } catch (const DeclaredBoundViolated& e) {
        CHECK(e.index() == 5);
    }
    CHECK_THROWS_AS(growth_profile(tm, DeclaredBound{Rat(0), Rat(1), "bad"}), InvalidInput);
}

TEST_CASE("fitted profile covers every computed coefficient") {
    const auto cantor = expand_series(oracle::load("cantor5"), 256);
    const auto p = growth_profile(cantor);
    CHECK_FALSE(p.certified);
    CHECK(p.rho >= 1);
    for (std::size_t n = 0; n < cantor.coeffs.size(); ++n) CHECK(abs(cantor.coeffs[n]) <= p.kappa * pow(p.rho, n));
    CHECK(p.rho.get_den() <= Int(1) << 20);
}

TEST_CASE("eval_at for the powers-of-two series") {
    const auto eq = oracle::load("powers2");
    const Dyadic w = Dyadic::pow2(-80);
    const auto v = eval_at(eq, Rat(1, 2), declared(eq), w);
    CHECK(v.certified);
    CHECK(v.route == "series");
    CHECK(v.value.width() <= w);
    const Rat seven = powers_partial(Rat(1, 2), 7);
    CHECK(v.value.contains(seven + pow(Rat(1, 2), 128)));
    CHECK(v.value.contains(v.partial_sum));
}

TEST_CASE("eval_at with a fitted profile is uncertified") {
    const auto eq = oracle::load("cantor5");
    const auto prof = growth_profile(expand_series(eq, 256));
    const auto v = eval_at(eq, Rat(1, 10), prof, Dyadic::pow2(-60));
    CHECK_FALSE(v.certified);
    // prod (1 - 10^{-5^k})^{-1} from exact factors
    Rat prod = 1;
    for (unsigned k = 0; k < 4; ++k) prod /= 1 - pow(Rat(1, 10), static_cast<unsigned long>(std::pow(5, k)));
    CHECK(v.value.contains(prod));
}

TEST_CASE("zero solution") {
    const auto eq = oracle::load("cantor5").with_seeds({Rat(0)});
    const auto v = eval_at(eq, Rat(1, 3), growth_profile(expand_series(eq, 64)), Dyadic::pow2(-40));
    CHECK(v.value.lo().is_zero());
    CHECK(v.value.hi().is_zero());
}

TEST_CASE("evaluation preconditions") {
    const auto eq = oracle::load("powers2");
    const auto prof = declared(eq);
    CHECK_THROWS_AS(eval_at(eq, Rat(1), prof, Dyadic::pow2(-10)), PointOutOfRange);
    CHECK_THROWS_AS(eval_at(eq, Rat(0), prof, Dyadic::pow2(-10)), PointOutOfRange);
    CHECK_THROWS_AS(eval_at(eq, Rat(1, 2), prof, Dyadic(0)), InvalidInput);
    GrowthProfile wide = prof;
    wide.rho = 3;
    CHECK_THROWS_AS(eval_at(eq, Rat(1, 2), wide, Dyadic::pow2(-10)), TailDiverges);
}

TEST_CASE("series and system routes agree") {
    for (const char* name : {"powers2", "thue_morse", "log2floor"}) {
        const auto eq = oracle::load(name);
        const bool zero_one = std::string(name) != "log2floor";
        const GrowthProfile p = zero_one ? declared(eq) : growth_profile(expand_series(eq, 256));
        const auto sys = companion_system(eq);
        const Dyadic w = Dyadic::pow2(-128);
        const auto direct = eval_at(eq, Rat(1, 2), p, w);
        for (std::size_t k : {0, 1, 4, 6}) {
            const auto via = eval_via_system(sys, eq, Rat(1, 2), k, p, w);
            CHECK_MESSAGE(via.value.intersects(direct.value), name << " k=" << k);
            CHECK(via.route == "system");
            CHECK(via.value.width() <= w);
        }
    }
}

TEST_CASE("system route on an iterate") {
    const auto eq = oracle::load("thue_morse");
    const auto prof = declared(eq);
    const auto direct = eval_at(eq, Rat(1, 3), prof, Dyadic::pow2(-100));
    const auto via = eval_via_system(iterate_system(companion_system(eq), 2), eq, Rat(1, 3), 2, prof, Dyadic::pow2(-100));
    CHECK(via.value.intersects(direct.value));
}

TEST_CASE("system route refuses singular points") {
    const auto eq = oracle::load("singular_demo");
    const auto prof = growth_profile(expand_series(eq, 128));
    CHECK_THROWS_AS(eval_via_system(companion_system(eq), eq, Rat(1, 2), 2, prof, Dyadic::pow2(-20)), NotRegular);
}

TEST_CASE("JSON rendering") {
    const auto eq = oracle::load("powers2");
    const auto j = to_json(eval_at(eq, Rat(1, 3), declared(eq), Dyadic::pow2(-50)), 20);
    CHECK(j["certified"] == true);
    CHECK(j["route"] == "series");
    CHECK(j.contains("value_lo"));
    CHECK(j.contains("tail_bound"));
}
