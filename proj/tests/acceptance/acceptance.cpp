#include "../unit/oracles.hpp"

#include "mahler/elimination/elimination.hpp"
#include "mahler/evaluator/evaluate.hpp"
#include "mahler/liouville/continued_fraction.hpp"
#include "mahler/liouville/lacunary.hpp"
#include "mahler/liouville/scan.hpp"
#include "mahler/mahler/regularity.hpp"
#include "mahler/siegel/aux_form.hpp"
#include "mahler/siegel/iterate.hpp"
#include "mahler/siegel/multiplicity.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

using namespace mahler;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kCorpus{"powers2",   "powers3",       "cantor5",      "log2floor",
                                       "thue_morse", "singular_demo", "singular_det", "lift_demo"};

const DeclaredBound kZeroOne{Rat(1), Rat(1), "coefficients in {0,1}"};

/// Collects failure messages; an empty list means the criterion passed.
struct Probe {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::vector<Int> exact_cf(Rat x) {
    std::vector<Int> out;
    for (;;) {
        const Int a = floor(x);
        out.push_back(a);
        x -= Rat(a);
        if (x == 0) return out;
        x = 1 / x;
    }
}

Rat liouville_truncation(unsigned terms) {
    Rat s = 0;
    unsigned long f = 1;
    for (unsigned n = 1; n <= terms; ++n) {
        f *= n;
        s += pow(Rat(1, 10), f);
    }
    return s;
}

XiSource exact_source(const Rat& x) {
    return [x](long p) { return Enclosure::from_rat(x, p); };
}

ExponentSeq ladder(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.emplace_back(x);
    return ExponentSeq::explicit_list(out);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void series_oracles(Probe& t) {
    const auto tm = expand_series(oracle::load("thue_morse"), 4096);
    const auto p2 = expand_series(oracle::load("powers2"), 4096);
    for (std::uint64_t n = 0; n < 4096; ++n) {
        t.expect(tm.coeffs[n] == oracle::digit_parity(n), "thue_morse coefficient " + std::to_string(n));
        t.expect(p2.coeffs[n] == (oracle::is_power_of_two(n) ? 1 : 0), "powers2 coefficient " + std::to_string(n));
    }
    const auto cantor = expand_series(oracle::load("cantor5"), 512);
    const auto ref = oracle::partitions_into_powers(5, 512);
    for (std::size_t n = 0; n < 512; ++n) t.expect(cantor.coeffs[n] == Rat(ref[n]), "cantor5 coefficient " + std::to_string(n));
}

void residuals(Probe& t) {
    for (const auto& name : kCorpus) {
        const auto eq = oracle::load(name);
        const Valuation v = verify_equation(eq, expand_series(eq, 512));
        t.expect(v.at_least_as(512), name + " residual valuation " + v.to_string());
    }
}

void regularity_certificates(Probe& t) {
    std::size_t regular_seen = 0;
    for (const auto& name : kCorpus) {
        const auto sys = companion_system(oracle::load(name));
        for (const Rat& alpha : {Rat(1, 2), Rat(1, 3), Rat(-2, 5)}) {
            const RegularityReport r = regularity(sys, alpha);
            const std::string tag = name + " at " + alpha.get_str();
            t.expect(recheck(sys, r), tag + " recheck");
            if (!r.regular) {
                t.expect(r.witness && r.failure_k, tag + " lacks a witness");
                if (r.witness) {
                    bool root = false;
                    for (const Poly& s : r.singular_polys) root = root || oracle::horner(s.coeffs(), *r.witness) == 0;
                    t.expect(root, tag + " witness is not a root");
                }
                continue;
            }
            ++regular_seen;
            const Rat a = abs(alpha);
            const unsigned long K = static_cast<unsigned long>(r.checked_up_to);
            t.expect(pow(a, static_cast<unsigned long>(std::pow(r.q, K))) < r.r_min, tag + " tail bound");
            Rat power = alpha;
            for (unsigned long k = 0; k <= K; ++k, power = pow(power, static_cast<unsigned long>(r.q)))
                for (const Poly& s : r.singular_polys) t.expect(oracle::horner(s.coeffs(), power) != 0, tag + " hits a root");
            for (const Poly& s : r.singular_polys)
                for (const auto& z : oracle::roots(s.coeffs()))
                    if (std::abs(z) > 1e-15L)
                        t.expect(r.r_min.get_d() <= static_cast<double>(std::abs(z)) * (1 + 1e-9), tag + " r_min above a root");
        }
    }
    t.expect(regular_seen >= 10, "too few regular corpus points");

    const RegularityReport s = regularity(companion_system(oracle::load("singular_demo")), Rat(1, 2));
    t.expect(!s.regular, "singular_demo reported regular");
    t.expect(s.failure_k == 0L, "singular_demo failure_k");
    t.expect(s.witness == Rat(1, 2), "singular_demo witness");
}

void siegel_construction(Probe& t) {
    const auto s = expand_series(oracle::load("powers2"), 64);
    const AuxResult r = aux_form({s}, 4, 24);
    t.expect(!r.form.is_zero(), "form is zero");
    t.expect(r.form.is_integral(), "form is not integral");
    t.expect(r.conditions == 24, "condition count");
    t.expect(r.achieved.at_least_as(24), "achieved valuation " + r.achieved.to_string());
    t.expect(achieved_valuation(r.form, {s}).at_least_as(24), "recomputed valuation");
}

void recursion_identity(Probe& t) {
    for (const char* name : {"thue_morse", "powers2"}) {
        const auto eq = oracle::load(name);
        const auto ctx = iteration_context(eq);
        const AuxResult r = aux_form({expand_series(eq, 64)}, 2);
        for (std::size_t k = 0; k <= 3; ++k) {
            const AuxForm rk = iterate_aux(r.form, ctx.B, ctx.a, 2, k);
            t.expect(check_iterate_identity(r.form, rk, ctx, 2, k, 256).holds,
                     std::string(name) + " k=" + std::to_string(k));
        }
    }
}

void multiplicity(Probe& t) {
    MultiplicityConfig cfg;
    cfg.mmax = 6;
    cfg.nmax = 6;
    cfg.trials = 8;
    cfg.seed = 1;
    for (const auto& name : kCorpus) {
        const std::vector<MahlerEquation> eqs{oracle::load(name)};
        const auto r = multiplicity_scan(eqs, cfg);
        t.expect(r.t == 1, name + " t");
        t.expect(r.rows.size() >= 36 * 8, name + " row count");
        Rat best = 0;
        for (const auto& row : r.rows) {
            t.expect(row.achieved_val.has_value(), name + " infinite valuation at M=" + std::to_string(row.M) +
                                                       " N=" + std::to_string(row.N));
            if (row.achieved_val && row.ratio > best) best = row.ratio;
        }
        t.expect(r.c_fit && *r.c_fit == best, name + " C_fit");
        t.expect(multiplicity_csv(multiplicity_scan(eqs, cfg)) == multiplicity_csv(r), name + " rerun differs");
    }
}

void route_agreement(Probe& t) {
    const Dyadic w = Dyadic::pow2(-256);
    for (const char* name : {"powers2", "thue_morse"}) {
        const auto eq = oracle::load(name);
        const auto prof = growth_profile(expand_series(eq, 256), kZeroOne);
        const auto direct = eval_at(eq, Rat(1, 2), prof, w);
        t.expect(direct.certified && direct.value.width() <= w, std::string(name) + " series route");
        const auto sys = companion_system(eq);
        for (std::size_t k = 0; k <= 6; ++k) {
            const auto via = eval_via_system(sys, eq, Rat(1, 2), k, prof, w);
            const std::string tag = std::string(name) + " k=" + std::to_string(k);
            t.expect(via.value.intersects(direct.value), tag + " disjoint");
            t.expect(via.certified, tag + " uncertified");
            t.expect(via.value.width() <= w, tag + " too wide");
        }
    }
}

void tower_identity(Probe& t) {
    const auto g = growth_check(ExponentSeq::tower(2, 5), Rat(4), 3);
    t.expect(g.steps.size() == 3, "step count");
    const std::vector<Rat> want{Rat(2), Rat(32), Rat(Int(1) << 25)};
    for (std::size_t n = 0; n < std::min<std::size_t>(3, g.steps.size()); ++n)
        t.expect(g.steps[n].ratio == want[n], "ratio " + std::to_string(n) + " = " + g.steps[n].ratio.get_str());
    t.expect(g.all_hold, "growth condition");
}

void qn_pn_algebra(Probe& t) {
    for (const auto& u : {ExponentSeq::tower(2, 5), ladder({1, 3, 4, 9}), ladder({2, 5, 11})}) {
        const std::size_t top = u.length() ? std::min<std::size_t>(*u.length() - 1, 2) : 1;
        for (std::size_t n = 0; n <= top; ++n) {
            const AuxForm q = qn_form(u, n);
            t.expect(q.height() == 1, "Q_N height");
            t.expect(q.deg_x() == u.value(n).get_si(), "Q_N degree");
            t.expect(q.is_homogeneous(), "Q_N homogeneity");
        }
    }

    std::mt19937_64 rng(2024);
    const auto u = ExponentSeq::tower(2, 2);
    const AuxForm x0 = variable(3, 0), x1 = variable(3, 1), y = variable(3, 2);
    // 3 X0^2 - X0 Y + 2 X1 Y - Y^2
    const AuxForm P = (x0 * x0).scaled(Poly::constant(Rat(3))) - x0 * y + (x1 * y).scaled(Poly::constant(Rat(2))) - y * y;
    for (std::size_t N = 0; N <= 2; ++N) {
        const unsigned long uN = u.value(N).get_ui();
        const AuxForm pn = pn_build(P, qn_form(u, N), u.value(N));
        for (int trial = 0; trial < 100;) {
            const auto x = oracle::random_rats(rng, 4, 9, 7);
            if (x[3] == 0) continue;
            ++trial;
            const Rat beta = x[2] / x[3];
            Rat xi = 0;
            for (std::size_t n = 0; n <= N; ++n) xi += pow(beta, u.value(n).get_ui());
            t.expect(pn.evaluate(x) == pow(x[3], 2 * uN) * P.evaluate({x[0], x[1], xi}),
                     "P_N identity N=" + std::to_string(N));
        }
    }
}

void scan_soundness(Probe& t) {
    ScanConfig small;
    small.dmax = 1;
    small.hmax = 2;
    const auto half = poly_min_scan(exact_source(Rat(1, 2)), small);
    t.expect(half.relations.size() == 1 && half.relations[0].coeffs == std::vector<long>{-1, 2} &&
                 half.relations[0].exact,
             "relation 2X - 1 missing");

    const auto tm = oracle::load("thue_morse");
    const auto prof = growth_profile(expand_series(tm, 256), kZeroOne);
    const XiSource beta = [tm, prof](long p) { return eval_at(tm, Rat(1, 2), prof, Dyadic::pow2(-p)).value; };

    ScanConfig cfg;
    cfg.dmax = 2;
    cfg.hmax = 20;
    for (const auto& [name, src] : std::vector<std::pair<std::string, XiSource>>{
             {"liouville truncation", exact_source(liouville_truncation(4))}, {"thue_morse beta", beta}}) {
        const auto r = poly_min_scan(src, cfg);
        t.expect(r.relations.empty(), name + " reported a relation");
        t.expect(r.rows.size() == 2 * default_ladder(20).size(), name + " row count");
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            t.expect(r.rows[i].min_abs_lo.sign() > 0, name + " nonpositive minimum");
            if (i > 0 && r.rows[i].d == r.rows[i - 1].d)
                t.expect(r.rows[i].min_abs_lo <= r.rows[i - 1].min_abs_lo, name + " minimum increases at H=" +
                                                                                 std::to_string(r.rows[i].H));
        }
    }
}

void cf_prefixes(Probe& t) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 20; ++i) {
        const Rat x = make_rat(num(rng), den(rng));
        const auto exact = exact_cf(x);
        const Enclosure e(Dyadic::from_rat(x, 80, Round::Down), Dyadic::from_rat(x, 80, Round::Up), 80);
        const auto pre = continued_fraction(e, 64).quotients;
        t.expect(!pre.empty() && pre.size() <= exact.size(), "prefix length for " + x.get_str());
        for (std::size_t k = 0; k < std::min(pre.size(), exact.size()); ++k)
            t.expect(pre[k] == exact[k], "quotient " + std::to_string(k) + " of " + x.get_str());
    }
    const Rat l4 = liouville_truncation(4);
    const auto exact = exact_cf(l4);
    t.expect(continued_fraction(l4, 64).quotients == exact, "exact Liouville truncation");
    const auto pre = continued_fraction(Enclosure::from_rat(l4, 256), 64).quotients;
    t.expect(pre.size() >= 8 && pre.size() <= exact.size(), "Liouville prefix length");
    for (std::size_t k = 0; k < std::min(pre.size(), exact.size()); ++k)
        t.expect(pre[k] == exact[k], "Liouville quotient " + std::to_string(k));
}

void elimination_suite(Probe& t) {
    ElimSuiteConfig cfg;
    cfg.count = 100;
    const auto rows = elim_suite(cfg);
    t.expect(rows.size() == 100, "row count");
    const long double tol = std::ldexp(1.0L, -40);
    for (const auto& r : rows) {
        t.expect(r.check.verdict != Verdict::Violation, "violation at seed " + std::to_string(r.seed));
        t.expect(r.deg <= 5, "degree bound");
        for (long c : r.coeffs) t.expect(std::abs(c) <= 10, "coefficient bound");
        const Enclosure d = dist_p1(binary_form(r.coeffs), ProjPoint::from_rats(r.omega, 160), 64);
        const long double ref = oracle::brute_dist(r.coeffs, r.omega[0].get_d(), r.omega[1].get_d());
        t.expect(std::abs(static_cast<long double>(d.mid().to_double()) - ref) <= tol,
                 "dist_p1 disagrees at seed " + std::to_string(r.seed));
    }
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MAHLER_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void determinism(Probe& t) {
    const fs::path dir = fs::temp_directory_path() / ("mahler_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string c = std::string(MAHLER_CORPUS_DIR) + "/";
    const std::vector<std::string> experiments{
        "experiment multiplicity --eq " + c + "thue_morse.json --mmax 4 --nmax 4",
        "experiment polyscan --xi liouville_constant --d 2 --hmax 16",
        "experiment elimsuite --count 100",
        "experiment lacunary --beta " + c + "thue_morse.json --alpha 1/2 --tower 2 5 --terms 2 --declare 1 1 zero-one",
    };
    for (const auto& e : experiments) {
        std::string first;
        for (const char* w : {"1", "1", "4", "4"}) {
            const fs::path out = dir / "run.csv";
            fs::remove(out);
            const int code = run_cli(e + " --seed 3 --workers " + w + " --out " + out.string());
            t.expect(code == 0, e + " exit " + std::to_string(code));
            const std::string text = slurp(out) + slurp(out.string() + ".plot.json");
            t.expect(text.size() > 0, e + " wrote nothing");
            if (first.empty())
                first = text;
            else
                t.expect(text == first, e + " differs with workers " + w);
        }
    }
    fs::remove_all(dir);
}

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<void(Probe&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "series oracle equivalence", 10, series_oracles},
        {2, "equation residuals", 0, residuals},
        {3, "regularity certificates", 1, regularity_certificates},
        {4, "auxiliary form construction", 5, siegel_construction},
        {5, "iterate recursion identity", 0, recursion_identity},
        {6, "multiplicity experiment", 60, multiplicity},
        {7, "evaluation route agreement", 5, route_agreement},
        {8, "tower growth identity", 0, tower_identity},
        {9, "Q_N and P_N algebra", 5, qn_pn_algebra},
        {10, "polynomial scan soundness", 60, scan_soundness},
        {11, "continued fraction prefixes", 0, cf_prefixes},
        {12, "elimination suite", 30, elimination_suite},
        {13, "determinism across runs and workers", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Probe probe;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(probe);
        } catch (const std::exception& e) {
            probe.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && secs >= c.limit_s)
            probe.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s) + " s");
        const bool ok = probe.failures.empty();
        failed += !ok;
        std::printf("%s %2d %s (%.2f s)", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs);
        if (!ok) std::printf(": %s (+%zu more)", probe.failures.front().c_str(), probe.failures.size() - 1);
        std::printf("\n");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
