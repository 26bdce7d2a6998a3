#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mahler/elimination/elimination.hpp"
#include "mahler/errors.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace mahler;

namespace {

ProjPoint pt(const Rat& a, const Rat& b) { return ProjPoint::from_rats({a, b}, 160); }

const AuxForm X0 = variable(2, 0), X1 = variable(2, 1);

bool near(const Enclosure& e, long double x, long double tol) {
    return std::abs(static_cast<long double>(e.mid().to_double()) - x) <= tol;
}

}  // namespace

TEST_CASE("projective points") {
    const ProjPoint p = pt(Rat(-3), Rat(1, 2));
    const ProjPoint n = p.normalized();
    CHECK(n.norm().contains(Rat(1)));
    REQUIRE(n.exact);
    CHECK((*n.exact)[0] == -1);
    CHECK((*n.exact)[1] == Rat(1, 6));
    CHECK(p.to_string() == "-3:1/2");
}

TEST_CASE("principal quantities") {
    const auto on = principal_quantities(X1 - X0, pt(Rat(1), Rat(1)));
    CHECK(on.deg == 1);
    CHECK_FALSE(on.logAbs_upper);

    const auto q = principal_quantities(X1, pt(Rat(1), Rat(1, 2)));
    REQUIRE(q.logAbs_upper);
    CHECK(q.logAbs_upper->intersects(log(Enclosure::from_rat(Rat(2), 160))));
    CHECK(q.logH_upper.contains(Rat(1)));

    const AuxForm f = X1 * X1 - X0 * X0, g = X1 - X0.scaled(Poly::constant(Rat(3)));
    const auto pf = principal_quantities(f, pt(Rat(2), Rat(1))), pg = principal_quantities(g, pt(Rat(2), Rat(1)));
    CHECK(principal_quantities(f * g, pt(Rat(2), Rat(1))).deg == pf.deg + pg.deg);
}

TEST_CASE("dist_p1 closed forms") {
    const Enclosure zero = dist_p1(X1 - X0, pt(Rat(1), Rat(1)));
    CHECK(zero.lo().is_zero());
    CHECK(zero.hi().is_zero());
    CHECK(dist_p1(X1 - X0, pt(Rat(1), Rat(0))).contains(Rat(1)));
    CHECK(dist_p1(X0 * X1, pt(Rat(1), Rat(1, 2))).contains(Rat(1, 2)));
    CHECK(dist_p1(X1, pt(Rat(1), Rat(1, 1024))).contains(Rat(1, 1024)));
    CHECK_THROWS_AS(dist_p1(AuxForm(2), pt(Rat(1), Rat(1))), ZeroForm);
}

TEST_CASE("dist_p1 vanishes on constructed roots") {
    // (2 X1 - 3 X0)(X1 + 5 X0) has roots (2:3) and (1:-5)
    const AuxForm f = (X1.scaled(Poly::constant(Rat(2))) - X0.scaled(Poly::constant(Rat(3)))) *
                      (X1 + X0.scaled(Poly::constant(Rat(5))));
    CHECK(dist_p1(f, pt(Rat(2), Rat(3))).hi().is_zero());
    CHECK(dist_p1(f, pt(Rat(-1, 7), Rat(5, 7))).hi().is_zero());
    CHECK(dist_p1(f, pt(Rat(1), Rat(1))).lo().sign() > 0);
}

TEST_CASE("dist_p1 matches brute-force root minimization") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> coeff(-10, 10), deg(1, 5), num(-20, 20), den(1, 20);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        std::vector<long> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c) x = coeff(rng);
        if (std::all_of(c.begin(), c.end(), [](long x) { return x == 0; })) continue;
        const Rat w0 = make_rat(num(rng), den(rng)), w1 = make_rat(num(rng), den(rng));
        if (w0 == 0 && w1 == 0) continue;
        const Enclosure d = dist_p1(binary_form(c), pt(w0, w1), 64);
        CHECK(d.lo().sign() >= 0);
        CHECK(d.hi() <= Dyadic(2));
        CHECK(d.width() <= Dyadic::pow2(-40));
        const long double ref = oracle::brute_dist(c, w0.get_d(), w1.get_d());
        CHECK_MESSAGE(near(d, ref, std::ldexp(1.0L, -40)), "coeffs " << c.size() << " ref " << static_cast<double>(ref));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("dist_p1 is projectively invariant") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 20; ++i) {
        const auto c = oracle::random_rats(rng, 4, 9, 1);
        std::vector<long> ci;
        for (const auto& x : c) ci.push_back(x.get_num().get_si());
        if (ci.back() == 0) ci.back() = 1;
        const AuxForm f = binary_form(ci);
        const auto w = oracle::random_rats(rng, 2, 9, 5);
        if (w[0] == 0 && w[1] == 0) continue;
        const Enclosure a = dist_p1(f, pt(w[0], w[1]), 64);
        const Enclosure b = dist_p1(f.scaled(Poly::constant(Rat(-5, 3))), pt(w[0] * Rat(3, 7), w[1] * Rat(3, 7)), 64);
        CHECK(a.intersects(b));
    }
}

TEST_CASE("elimination consistency check") {
    const ElimCheck on = liouville_elim_check(X1 - X0, pt(Rat(1), Rat(1)));
    CHECK(on.verdict == Verdict::True);
    CHECK_FALSE(on.lhs);
    CHECK(on.label == "consistency");

    const Enclosure l2 = log2_constant(160);
    for (long k = 1; k <= 20; ++k) {
        const ElimCheck c = liouville_elim_check(X1, pt(Rat(1), Rat(1, Int(1) << k)));
        REQUIRE(c.lhs);
        REQUIRE(c.rhs);
        CHECK(c.verdict == Verdict::True);
        const Enclosure logt = Enclosure::from_rat(Rat(-k), 160) * l2;
        CHECK(c.lhs->intersects(logt));
        const Enclosure gap = *c.rhs - *c.lhs;
        CHECK(gap.intersects(Enclosure::from_rat(Rat(2), 160) * l2 + Enclosure::from_rat(Rat(3), 160)));
    }
}

TEST_CASE("randomized suite") {
    ElimSuiteConfig cfg;
    cfg.count = 100;
    cfg.seed = 5;
    const auto rows = elim_suite(cfg);
    REQUIRE(rows.size() == 100);
    for (const auto& r : rows) {
        CHECK(r.check.verdict != Verdict::Violation);
        CHECK(r.deg >= 1);
        CHECK(r.deg <= 5);
        for (long c : r.coeffs) CHECK(std::abs(c) <= 10);
    }
    const std::string csv = elim_csv(rows);
    CHECK(csv.rfind("seed,deg,coeffs,omega,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict\n", 0) == 0);
    CHECK(elim_csv(elim_suite(cfg)) == csv);
    cfg.workers = 4;
    CHECK(elim_csv(elim_suite(cfg)) == csv);
    CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
}
