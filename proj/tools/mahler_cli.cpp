#include "mahler/algebra/parse.hpp"
#include "mahler/elimination/elimination.hpp"
#include "mahler/errors.hpp"
#include "mahler/evaluator/evaluate.hpp"
#include "mahler/liouville/continued_fraction.hpp"
#include "mahler/liouville/lacunary.hpp"
#include "mahler/liouville/scan.hpp"
#include "mahler/mahler/document.hpp"
#include "mahler/siegel/aux_form.hpp"
#include "mahler/siegel/iterate.hpp"
#include "mahler/siegel/multiplicity.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace mahler;

namespace {

enum Exit { kOk = 0, kNegative = 1, kParse = 2, kSeeds = 3, kNotFound = 4, kPrecision = 5 };

struct Global {
    long precision = 128;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    unsigned workers = 1;
};

/// Output sink: a file when --out is given, stdout otherwise.
void emit(const Global& g, const std::string& text, const std::string& path_override = {}) {
    const std::string& path = path_override.empty() ? g.out : path_override;
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + path);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// CSV with the run configuration as a leading comment line.
std::string csv_with_header(const Json& config, const std::string& body) {
    return "# config: " + config.dump() + "\n" + body;
}

Json base_config(const Global& g, const std::string& command) {
    Json c;
    c["command"] = command;
    c["precision"] = g.precision;
    c["seed"] = g.seed;
    return c;
}

Dyadic width_from_bits(long bits) { return Dyadic::pow2(-bits); }

std::optional<DeclaredBound> declared_bound(const std::vector<std::string>& d) {
    if (d.empty()) return std::nullopt;
    if (d.size() < 2) throw InvalidInput("--declare needs KAPPA RHO [REASON]");
    DeclaredBound b{parse_rational(d[0]), parse_rational(d[1]), d.size() > 2 ? d[2] : std::string("declared")};
    return b;
}

GrowthProfile profile_for(const MahlerEquation& eq, const std::optional<DeclaredBound>& decl, std::size_t n) {
    return growth_profile(expand_series(eq, n), decl);
}

Json profile_json(const GrowthProfile& p) {
    return Json{{"kappa", p.kappa.get_str()},
                {"rho", p.rho.get_str()},
                {"verified_to", p.verified_to},
                {"certified", p.certified},
                {"reason", p.reason},
                {"denominator_bits", p.denominator_bits}};
}

/// Named or file-backed xi: liouville_constant, liouville:T (exact T-term
/// truncation), rational:P/Q, or an equation document evaluated at --alpha.
struct XiSpec {
    std::string name;
    std::string alpha;
    std::vector<std::string> declare;
};

struct XiBuilt {
    XiSource source;
    bool certified = true;
    std::optional<Rat> exact;
};

XiBuilt build_xi(const XiSpec& spec) {
    if (spec.name == "liouville_constant") {
        XiSource src = [](long p) {
            std::size_t terms = 1;
            auto u = ExponentSeq::factorial();
            while (Rat(u.value(terms)) * Rat(3) < Rat(p + 8)) ++terms;
            return xi_value(Rat(1, 10), u, terms, p).value;
        };
        return {src, true, std::nullopt};
    }
    if (spec.name.rfind("liouville:", 0) == 0) {
        const auto terms = static_cast<std::size_t>(std::stoul(spec.name.substr(10)));
        Rat x = xi_partial_sum(Rat(1, 10), ExponentSeq::factorial(), terms);
        return {[x](long p) { return Enclosure::from_rat(x, p); }, true, x};
    }
    if (spec.name.rfind("rational:", 0) == 0) {
        Rat x = parse_rational(spec.name.substr(9));
        return {[x](long p) { return Enclosure::from_rat(x, p); }, true, x};
    }
    if (spec.alpha.empty()) throw InvalidInput("an equation-valued xi needs --alpha");
    const MahlerEquation eq = load_equation(spec.name);
    const Rat alpha = parse_rational(spec.alpha);
    const GrowthProfile prof = profile_for(eq, declared_bound(spec.declare), 256);
    XiSource src = [eq, alpha, prof](long p) { return eval_at(eq, alpha, prof, width_from_bits(p)).value; };
    return {src, prof.certified, std::nullopt};
}

ExponentSeq build_exponents(const std::vector<unsigned long>& tower, bool factorial, const std::vector<std::string>& list) {
    if (!tower.empty()) {
        if (tower.size() != 2) throw InvalidInput("--tower needs B C");
        return ExponentSeq::tower(tower[0], tower[1]);
    }
    if (factorial) return ExponentSeq::factorial();
    if (!list.empty()) {
        std::vector<Int> v;
        for (const auto& s : list) v.push_back(Int(s));
        return ExponentSeq::explicit_list(std::move(v));
    }
    throw InvalidInput("choose one of --tower, --factorial, --exponents");
}

std::string decimal(const Dyadic& d, Round dir, int digits = 30) {
    return d.is_zero() ? "0" : d.to_decimal(digits, dir);
}

double approx_log10(const Dyadic& d) {
    if (d.is_zero()) return -INFINITY;
    const double m = static_cast<double>(d.magnitude());
    const Dyadic r(d.mantissa(), d.exponent() - d.magnitude());
    return (m + std::log2(std::abs(r.to_double()))) * std::log10(2.0);
}

// ---------------------------------------------------------------- commands

int cmd_expand(const Global& g, const std::string& eqp, std::size_t n) {
    const MahlerEquation eq = load_equation(eqp);
    const TruncatedSeries s = expand_series(eq, n);
    Json cfg = base_config(g, "expand");
    cfg["eq"] = to_json(eq);
    cfg["N"] = n;
    if (g.format == "csv") {
        std::ostringstream os;
        os << "n,coeff\n";
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) os << i << ',' << s.coeffs[i].get_str() << '\n';
        emit(g, csv_with_header(cfg, os.str()));
    } else {
        emit(g, dump(Json{{"config", cfg}, {"coeffs", to_json(s)}}));
    }
    return kOk;
}

int cmd_verify(const Global& g, const std::string& eqp, std::size_t n) {
    const MahlerEquation eq = load_equation(eqp);
    const Valuation v = verify_equation(eq, expand_series(eq, n));
    Json cfg = base_config(g, "verify");
    cfg["eq"] = to_json(eq);
    cfg["N"] = n;
    emit(g, dump(Json{{"config", cfg}, {"valuation", to_json(v)}, {"at_least_N", v.at_least_as(static_cast<long>(n))}}));
    return v.at_least_as(static_cast<long>(n)) ? kOk : kNegative;
}

int cmd_system(const Global& g, const std::string& action, const std::vector<std::string>& eqs, bool augmented,
               std::size_t l) {
    if (eqs.empty()) throw InvalidInput("system needs --eq");
    auto build = [&](const std::string& p) {
        const MahlerEquation eq = load_equation(p);
        return augmented ? augmented_system(eq) : companion_system(eq);
    };
    MahlerSystem sys;
    if (action == "build") {
        sys = build(eqs.front());
    } else if (action == "sum") {
        std::vector<MahlerSystem> parts;
        for (const auto& p : eqs) parts.push_back(build(p));
        sys = direct_sum(parts);
    } else if (action == "iterate") {
        sys = iterate_system(build(eqs.front()), l);
    } else {
        throw InvalidInput("system action must be build, sum or iterate");
    }
    Json cfg = base_config(g, "system " + action);
    cfg["eqs"] = eqs;
    cfg["augmented"] = augmented;
    if (action == "iterate") cfg["l"] = l;
    emit(g, dump(Json{{"config", cfg}, {"system", to_json(sys)}}));
    return kOk;
}

int cmd_regular(const Global& g, const std::string& eqp, const std::string& alpha_s, bool search, std::size_t lmax,
                std::size_t l) {
    const MahlerEquation eq = load_equation(eqp);
    Rat alpha;
    try {
        alpha = parse_rational(alpha_s);
    } catch (const ParseError& e) {
        throw InvalidInput(std::string("invalid --alpha: ") + e.what());
    }
    Json cfg = base_config(g, "regular");
    cfg["eq"] = to_json(eq);
    cfg["alpha"] = alpha.get_str();
    if (search) {
        cfg["lmax"] = lmax;
        const RegularPowerSearch res = find_regular_power(eq, alpha, lmax);
        Json transcript = Json::array();
        for (std::size_t i = 0; i < res.transcript.size(); ++i) {
            Json r = to_json(res.transcript[i]);
            r["l"] = i + 1;
            transcript.push_back(r);
        }
        Json out{{"config", cfg}, {"found", res.found()}, {"transcript", transcript}};
        if (res.found()) {
            out["l"] = *res.l;
            out["system"] = to_json(*res.system);
        }
        emit(g, dump(out));
        return res.found() ? kOk : kNotFound;
    }
    cfg["l"] = l;
    const MahlerSystem sys = iterate_system(companion_system(eq), l);
    const RegularityReport rep = regularity(sys, alpha);
    emit(g, dump(Json{{"config", cfg}, {"report", to_json(rep)}}));
    return rep.regular ? kOk : kNegative;
}

int cmd_siegel(const Global& g, const std::vector<std::string>& eqs, std::size_t n, std::optional<std::size_t> v,
               std::optional<std::size_t> m, std::size_t k, std::size_t order) {
    if (eqs.empty()) throw InvalidInput("siegel needs --eq");
    std::vector<MahlerEquation> parsed;
    std::vector<TruncatedSeries> series;
    const std::size_t mz = m.value_or(n);
    const std::size_t need = v.value_or(aux_unknowns(eqs.size(), mz, n) - 1) + n + 1;
    for (const auto& p : eqs) {
        parsed.push_back(load_equation(p));
        series.push_back(expand_series(parsed.back(), std::max(need, order)));
    }
    const AuxResult res = aux_form(series, n, v, m);
    Json cfg = base_config(g, "siegel");
    cfg["eqs"] = eqs;
    cfg["N"] = n;
    cfg["M"] = mz;
    cfg["conditions"] = res.conditions;
    Json out{{"config", cfg},
             {"unknowns", res.unknowns},
             {"kernel_dim", res.kernel_dim},
             {"achieved", to_json(res.achieved)},
             {"zero_composition", res.zero_composition},
             {"form", form_to_json(res.form)}};
    if (k > 0) {
        if (parsed.size() != 1) throw InvalidInput("--k works with a single equation");
        const IterationContext ctx = iteration_context(parsed.front());
        if (ctx.B.size() != res.form.nvars())
            throw ArityMismatch("the iteration needs an order-1 equation to match the form");
        Json checks = Json::array();
        for (std::size_t j = 0; j <= k; ++j) {
            const AuxForm rk = iterate_aux(res.form, ctx.B, ctx.a, n, j);
            const IdentityCheck c = check_iterate_identity(res.form, rk, ctx, n, j, order);
            checks.push_back(Json{{"k", j},
                                  {"holds", c.holds},
                                  {"first_mismatch", c.first_mismatch ? Json(*c.first_mismatch) : Json(nullptr)},
                                  {"deg_z", rk.deg_z()}});
        }
        out["a"] = to_string(ctx.a);
        out["identity"] = checks;
    }
    emit(g, dump(out));
    return kOk;
}

Json multiplicity_plot(const MultiplicityResult& r, const Json& cfg) {
    std::map<std::size_t, std::map<std::size_t, long>> best;
    for (const auto& row : r.rows)
        if (row.achieved_val) {
            long& b = best[row.N][row.M];
            b = std::max(b, *row.achieved_val);
        }
    Json series = Json::array();
    for (const auto& [N, cells] : best) {
        Json x = Json::array(), y = Json::array();
        for (const auto& [M, val] : cells) {
            x.push_back(M);
            y.push_back(val);
        }
        series.push_back(Json{{"name", "max achieved_val, N=" + std::to_string(N)}, {"x", x}, {"y", y}});
    }
    return Json{{"config", cfg},
                {"x_label", "M"},
                {"y_label", "achieved valuation"},
                {"c_fit", r.c_fit ? Json(r.c_fit->get_str()) : Json(nullptr)},
                {"series", series}};
}

int cmd_multiplicity(const Global& g, const std::vector<std::string>& eqs, MultiplicityConfig mc, const std::string& plot) {
    std::vector<MahlerEquation> parsed;
    for (const auto& p : eqs) parsed.push_back(load_equation(p));
    mc.seed = g.seed;
    mc.workers = g.workers;
    const MultiplicityResult r = multiplicity_scan(parsed, mc);
    Json cfg = base_config(g, "multiplicity");
    cfg["eqs"] = eqs;
    cfg["mmax"] = mc.mmax;
    cfg["nmax"] = mc.nmax;
    cfg["trials"] = mc.trials;
    cfg["radius"] = mc.radius;
    cfg["max_window"] = mc.max_window;
    cfg["c_fit"] = r.c_fit ? Json(r.c_fit->get_str()) : Json(nullptr);
    if (g.format == "json")
        emit(g, dump(multiplicity_plot(r, cfg)));
    else
        emit(g, csv_with_header(cfg, multiplicity_csv(r)));
    if (!plot.empty()) emit(g, dump(multiplicity_plot(r, cfg)), plot);
    return kOk;
}

int cmd_eval(const Global& g, const std::string& eqp, const std::string& alpha_s, long width_bits,
             const std::vector<std::string>& declare, const std::string& route, std::size_t k, std::size_t profile_n) {
    const MahlerEquation eq = load_equation(eqp);
    const Rat alpha = parse_rational(alpha_s);
    const GrowthProfile prof = profile_for(eq, declared_bound(declare), profile_n);
    const Dyadic w = width_from_bits(width_bits);
    ValueEnclosure v;
    if (route == "series")
        v = eval_at(eq, alpha, prof, w);
    else if (route == "system")
        v = eval_via_system(companion_system(eq), eq, alpha, k, prof, w);
    else
        throw InvalidInput("--route must be series or system");
    Json cfg = base_config(g, "eval");
    cfg["eq"] = to_json(eq);
    cfg["alpha"] = alpha.get_str();
    cfg["width_bits"] = width_bits;
    cfg["route"] = route;
    if (route == "system") cfg["k"] = k;
    const int digits = static_cast<int>(static_cast<double>(width_bits) * 0.30103) + 6;
    emit(g, dump(Json{{"config", cfg}, {"profile", profile_json(prof)}, {"result", to_json(v, digits)}}));
    return kOk;
}

struct LacunaryOpts {
    std::string beta;
    std::string alpha;
    std::vector<std::string> declare;
    std::vector<unsigned long> tower;
    bool factorial = false;
    std::vector<std::string> exponents;
    std::size_t terms = 2;
    std::string C = "4";
    std::size_t upto = 3;
};

int cmd_lacunary(const Global& g, const LacunaryOpts& o, bool experiment, const std::string& plot) {
    const ExponentSeq u = build_exponents(o.tower, o.factorial, o.exponents);
    const Rat C = parse_rational(o.C);
    const GrowthCheck gc = growth_check(u, C, o.upto);

    Json cfg = base_config(g, experiment ? "experiment lacunary" : "lacunary");
    cfg["exponents"] = u.describe();
    cfg["terms"] = o.terms;
    cfg["C"] = C.get_str();
    cfg["upto"] = o.upto;

    std::optional<ValueEnclosure> xi;
    Json beta_json = nullptr;
    if (!o.beta.empty()) {
        cfg["beta"] = o.beta;
        cfg["alpha"] = o.alpha;
        if (o.beta.rfind("rational:", 0) == 0) {
            xi = xi_value(parse_rational(o.beta.substr(9)), u, o.terms, g.precision);
        } else {
            const MahlerEquation eq = load_equation(o.beta);
            if (o.alpha.empty()) throw InvalidInput("--beta from an equation needs --alpha");
            const GrowthProfile prof = profile_for(eq, declared_bound(o.declare), 256);
            const ValueEnclosure b = eval_at(eq, parse_rational(o.alpha), prof, width_from_bits(g.precision));
            beta_json = to_json(b);
            xi = xi_value(b, u, o.terms, g.precision);
        }
    }

    std::ostringstream csv;
    csv << "n,u_n,u_n1,holds,ratio\n";
    Json table = Json::array();
    for (const auto& s : gc.steps) {
        const std::string un = u.value(s.n).get_str(), un1 = u.value(s.n + 1).get_str();
        csv << s.n << ',' << un << ',' << un1 << ',' << (s.holds ? "true" : "false") << ',' << s.ratio.get_str() << '\n';
        table.push_back(Json{{"n", s.n}, {"u_n", un}, {"u_n1", un1}, {"holds", s.holds}, {"ratio", s.ratio.get_str()}});
    }
    Json result{{"config", cfg},
                 {"growth", Json{{"steps", table}, {"all_hold", gc.all_hold}, {"increasing", gc.increasing}}}};
    if (!beta_json.is_null()) result["beta"] = beta_json;
    if (xi) result["xi"] = to_json(*xi, static_cast<int>(static_cast<double>(g.precision) * 0.30103));

    if (experiment) {
        Json cfg2 = cfg;
        if (xi) {
            cfg2["xi_lo"] = result["xi"]["value_lo"];
            cfg2["xi_hi"] = result["xi"]["value_hi"];
        }
        if (g.format == "json")
            emit(g, dump(result));
        else
            emit(g, csv_with_header(cfg2, csv.str()));
        if (!plot.empty()) {
            Json x = Json::array(), y = Json::array();
            for (const auto& s : gc.steps) {
                x.push_back(s.n);
                y.push_back(std::log2(s.ratio.get_d()));
            }
            emit(g,
                 dump(Json{{"config", cfg},
                           {"x_label", "n"},
                           {"y_label", "log2 u_{n+1}/u_n^C"},
                           {"series", Json::array({Json{{"name", "growth"}, {"x", x}, {"y", y}}})}}),
                 plot);
        }
    } else if (g.format == "csv") {
        emit(g, csv_with_header(cfg, csv.str()));
    } else {
        emit(g, dump(result));
    }
    return kOk;
}

struct ScanOpts {
    XiSpec xi;
    long d = 1;
    long hmax = 16;
    std::string c1;
    long tau = 1;
    long max_precision = 4096;
};

int cmd_polyscan(const Global& g, const ScanOpts& o, const std::string& plot) {
    const XiBuilt xi = build_xi(o.xi);
    ScanConfig sc;
    sc.dmax = o.d;
    sc.hmax = o.hmax;
    sc.start_precision = g.precision;
    sc.max_precision = std::max(o.max_precision, g.precision);
    sc.workers = g.workers;
    if (!o.c1.empty()) sc.bound = BoundProfile{parse_rational(o.c1), o.tau};
    const ScanResult r = poly_min_scan(xi.source, sc);

    Json cfg = base_config(g, "polyscan");
    cfg["xi"] = o.xi.name;
    if (!o.xi.alpha.empty()) cfg["alpha"] = o.xi.alpha;
    cfg["xi_certified"] = xi.certified;
    cfg["d"] = o.d;
    cfg["hmax"] = o.hmax;
    cfg["max_precision"] = sc.max_precision;
    if (sc.bound) cfg["bound"] = Json{{"c1", sc.bound->c1.get_str()}, {"tau", sc.bound->tau}};
    Json rel = Json::array();
    bool inexact = false;
    for (const auto& c : r.relations) {
        rel.push_back(Json{{"coeffs", coeffs_string(c.coeffs)}, {"exact", c.exact}, {"precision_bits", c.precision_bits}});
        inexact = inexact || !c.exact;
    }
    cfg["relations"] = rel;

    Json plotj;
    {
        std::map<long, std::pair<Json, Json>> byd;
        for (const auto& row : r.rows) {
            auto& [x, y] = byd[row.d];
            x.push_back(std::log10(static_cast<double>(row.H)));
            y.push_back(approx_log10(row.min_abs_lo));
        }
        Json series = Json::array();
        for (auto& [d, xy] : byd)
            series.push_back(Json{{"name", "log10 min |P(xi)|, d=" + std::to_string(d)}, {"x", xy.first}, {"y", xy.second}});
        plotj = Json{{"config", cfg}, {"x_label", "log10 H"}, {"y_label", "log10 min |P(xi)|"}, {"series", series}};
    }
    if (g.format == "json") {
        Json rows = Json::array();
        for (const auto& row : r.rows)
            rows.push_back(Json{{"d", row.d},
                                {"H", row.H},
                                {"min_abs_lo", decimal(row.min_abs_lo, Round::Down, 12)},
                                {"argmin_coeffs", coeffs_string(row.argmin)},
                                {"precision_bits", row.precision_bits}});
        emit(g, dump(Json{{"config", cfg}, {"rows", rows}}));
    } else {
        emit(g, csv_with_header(cfg, scan_csv(r)));
    }
    if (!plot.empty()) emit(g, dump(plotj), plot);
    if (inexact) {
        std::cerr << "precision exhausted: some values could not be separated from zero (see relations)\n";
        return kPrecision;
    }
    return kOk;
}

int cmd_cf(const Global& g, const XiSpec& spec, std::size_t max_terms) {
    const XiBuilt xi = build_xi(spec);
    const ContinuedFraction cf =
        xi.exact ? continued_fraction(*xi.exact, max_terms) : continued_fraction(xi.source(g.precision), max_terms);
    Json cfg = base_config(g, "cf");
    cfg["xi"] = spec.name;
    if (!spec.alpha.empty()) cfg["alpha"] = spec.alpha;
    cfg["max_terms"] = max_terms;
    Json q = Json::array();
    for (const auto& a : cf.quotients) q.push_back(a.get_str());
    emit(g, dump(Json{{"config", cfg},
                      {"quotients", q},
                      {"count", cf.quotients.size()},
                      {"stop", to_string(cf.stop)},
                      {"width", cf.width.get_str()},
                      {"certified", xi.certified}}));
    return kOk;
}

int cmd_elimsuite(const Global& g, ElimSuiteConfig ec, const std::string& plot) {
    ec.seed = g.seed;
    ec.workers = g.workers;
    ec.accuracy_bits = g.precision / 2;
    const auto rows = elim_suite(ec);
    Json cfg = base_config(g, "elimsuite");
    cfg["count"] = ec.count;
    cfg["max_deg"] = ec.max_deg;
    cfg["max_coeff"] = ec.max_coeff;
    cfg["label"] = "consistency";
    std::size_t violations = 0, inconclusive = 0;
    for (const auto& r : rows) {
        violations += r.check.verdict == Verdict::Violation;
        inconclusive += r.check.verdict == Verdict::Inconclusive;
    }
    cfg["violations"] = violations;
    cfg["inconclusive"] = inconclusive;
    emit(g, csv_with_header(cfg, elim_csv(rows)));
    if (!plot.empty()) {
        Json x = Json::array(), y = Json::array();
        for (const auto& r : rows) {
            if (!r.check.lhs || !r.check.rhs) continue;
            x.push_back(r.check.lhs->mid().to_double());
            y.push_back(r.check.rhs->mid().to_double());
        }
        emit(g,
             dump(Json{{"config", cfg},
                       {"x_label", "deg log dist"},
                       {"y_label", "log |F(omega)| bound + 3 deg"},
                       {"series", Json::array({Json{{"name", "instances"}, {"x", x}, {"y", y}}})}}),
             plot);
    }
    return violations ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for Mahler functional equations"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--precision", g.precision, "working precision in bits")->check(CLI::Range(64L, 1L << 20));
    app.add_option("--seed", g.seed, "seed for randomized runs");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "output file (stdout by default)");
    app.add_option("--workers", g.workers, "worker threads")->check(CLI::Range(1u, 256u));

    std::string eq, alpha, plot, action;
    std::vector<std::string> eqs, declare;
    std::size_t N = 64, lmax = 4, l = 1, k = 0, order = 256, profile_n = 256, max_terms = 32;
    std::optional<std::size_t> conditions, mdeg;
    bool search = false, augmented = false;
    long width_bits = 128;
    std::string route = "series";

    auto* expand = app.add_subcommand("expand", "series coefficients of an equation's solution");
    expand->add_option("--eq", eq, "equation document")->required();
    expand->add_option("-N", N, "number of coefficients")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));

    auto* verify = app.add_subcommand("verify", "residual valuation of an expansion");
    verify->add_option("--eq", eq, "equation document")->required();
    verify->add_option("-N", N, "truncation order")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));

    auto* system = app.add_subcommand("system", "build, sum or iterate Mahler systems");
    system->add_option("action", action, "build | sum | iterate")->required();
    system->add_option("--eq", eqs, "equation document(s)")->required();
    system->add_flag("--augmented", augmented, "always carry the constant coordinate");
    system->add_option("--l", l, "iteration count")->check(CLI::Range(std::size_t{1}, std::size_t{16}));

    auto* regular = app.add_subcommand("regular", "regularity of a point for the companion system");
    regular->add_option("--eq", eq, "equation document")->required();
    regular->add_option("--alpha", alpha, "rational point")->required();
    regular->add_flag("--search", search, "search l = 1..lmax for a regular iterate");
    regular->add_option("--lmax", lmax, "largest iterate tried by --search");
    regular->add_option("--l", l, "iterate to test without --search")->check(CLI::Range(std::size_t{1}, std::size_t{16}));

    auto* siegel = app.add_subcommand("siegel", "auxiliary form with prescribed vanishing");
    siegel->add_option("--eq", eqs, "equation document per function f_i")->required();
    siegel->add_option("-N", N, "X-degree")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    siegel->add_option("--conditions", conditions, "vanishing conditions (default unknowns - 1)");
    siegel->add_option("--m", mdeg, "z-degree bound (default N)");
    siegel->add_option("--k", k, "also iterate the form and check the identity up to k");
    siegel->add_option("--order", order, "truncation order of the identity check");

    MultiplicityConfig mc;
    auto add_mult = [&](CLI::App* c) {
        c->add_option("--eq", eqs, "equation document per function f_i")->required();
        c->add_option("--mmax", mc.mmax, "largest z-degree")->check(CLI::Range(std::size_t{1}, std::size_t{32}));
        c->add_option("--nmax", mc.nmax, "largest X-degree")->check(CLI::Range(std::size_t{1}, std::size_t{32}));
        c->add_option("--trials", mc.trials, "random forms per cell");
        c->add_option("--radius", mc.radius, "coefficient range [-r, r]");
        c->add_option("--max-window", mc.max_window, "largest valuation window");
        c->add_option("--plot", plot, "plot-data JSON path");
    };
    auto* mult = app.add_subcommand("multiplicity", "valuations of random forms (CSV)");
    add_mult(mult);

    auto* eval = app.add_subcommand("eval", "certified enclosure of f(alpha)");
    eval->add_option("--eq", eq, "equation document")->required();
    eval->add_option("--alpha", alpha, "rational point")->required();
    eval->add_option("--width-bits", width_bits, "target width 2^-bits")->check(CLI::Range(1L, 1L << 16));
    eval->add_option("--declare", declare, "declared coefficient bound KAPPA RHO [REASON]")->expected(2, 3);
    eval->add_option("--route", route, "series or system");
    eval->add_option("--k", k, "pullback steps for the system route");
    eval->add_option("--profile-n", profile_n, "coefficients used for the growth profile");

    LacunaryOpts lo;
    auto add_lac = [&](CLI::App* c) {
        c->add_option("--beta", lo.beta, "equation document or rational:P/Q");
        c->add_option("--alpha", lo.alpha, "point at which the beta equation is evaluated");
        c->add_option("--declare", lo.declare, "declared bound for beta's coefficients")->expected(2, 3);
        c->add_option("--tower", lo.tower, "u_n = B^(C^n)")->expected(2);
        c->add_flag("--factorial", lo.factorial, "u_n = (n+1)!");
        c->add_option("--exponents", lo.exponents, "explicit exponent list");
        c->add_option("--terms", lo.terms, "summands before the tail bound");
        c->add_option("--C", lo.C, "growth exponent for the check");
        c->add_option("--upto", lo.upto, "growth steps checked");
        c->add_option("--plot", plot, "plot-data JSON path");
    };
    auto* lac = app.add_subcommand("lacunary", "lacunary series value and growth check");
    add_lac(lac);

    ScanOpts so;
    auto add_scan = [&](CLI::App* c) {
        c->add_option("--xi", so.xi.name, "liouville_constant, liouville:T, rational:P/Q, or an equation document")
            ->required();
        c->add_option("--alpha", so.xi.alpha, "point for an equation-valued xi");
        c->add_option("--declare", so.xi.declare, "declared bound for xi's coefficients")->expected(2, 3);
        c->add_option("--d", so.d, "largest degree")->check(CLI::Range(1L, 8L));
        c->add_option("--hmax", so.hmax, "largest height")->check(CLI::Range(1L, 100000L));
        c->add_option("--c1", so.c1, "bound profile constant");
        c->add_option("--tau", so.tau, "bound profile exponent");
        c->add_option("--max-precision", so.max_precision, "precision ceiling in bits");
        c->add_option("--plot", plot, "plot-data JSON path");
    };
    auto* scan = app.add_subcommand("polyscan", "minimum of |P(xi)| over integer polynomials");
    add_scan(scan);

    XiSpec cfx;
    auto* cf = app.add_subcommand("cf", "certified continued fraction prefix");
    cf->add_option("--xi", cfx.name, "liouville_constant, liouville:T, rational:P/Q, or an equation document")->required();
    cf->add_option("--alpha", cfx.alpha, "point for an equation-valued xi");
    cf->add_option("--declare", cfx.declare, "declared bound for xi's coefficients")->expected(2, 3);
    cf->add_option("--max-terms", max_terms, "largest number of partial quotients");

    ElimSuiteConfig ec;
    auto add_elim = [&](CLI::App* c) {
        c->add_option("--count", ec.count, "number of random instances");
        c->add_option("--max-deg", ec.max_deg, "largest form degree")->check(CLI::Range(1L, 12L));
        c->add_option("--max-coeff", ec.max_coeff, "coefficient range [-c, c]");
        c->add_option("--plot", plot, "plot-data JSON path");
    };
    auto* elim = app.add_subcommand("elimsuite", "randomized distance/absolute-value consistency suite");
    add_elim(elim);

    auto* exp = app.add_subcommand("experiment", "run an experiment and emit CSV plus plot data");
    exp->require_subcommand(1);
    auto* xm = exp->add_subcommand("multiplicity", "multiplicity scan");
    add_mult(xm);
    auto* xp = exp->add_subcommand("polyscan", "polynomial minimum scan");
    add_scan(xp);
    auto* xe = exp->add_subcommand("elimsuite", "elimination suite");
    add_elim(xe);
    auto* xl = exp->add_subcommand("lacunary", "lacunary value and growth table");
    add_lac(xl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    }

    // Experiments default to CSV and to a sibling plot-data file.
    const bool is_exp = exp->parsed();
    if (is_exp) {
        if (!app.get_option("--format")->count()) g.format = "csv";
        if (plot.empty() && !g.out.empty() && g.out != "-") plot = g.out + ".plot.json";
    }

    try {
        if (expand->parsed()) return cmd_expand(g, eq, N);
        if (verify->parsed()) return cmd_verify(g, eq, N);
        if (system->parsed()) return cmd_system(g, action, eqs, augmented, l);
        if (regular->parsed()) return cmd_regular(g, eq, alpha, search, lmax, l);
        if (siegel->parsed()) return cmd_siegel(g, eqs, N, conditions, mdeg, k, order);
        if (mult->parsed()) {
            if (!app.get_option("--format")->count()) g.format = "csv";
            return cmd_multiplicity(g, eqs, mc, plot);
        }
        if (xm->parsed()) return cmd_multiplicity(g, eqs, mc, plot);
        if (eval->parsed()) return cmd_eval(g, eq, alpha, width_bits, declare, route, k, profile_n);
        if (lac->parsed()) return cmd_lacunary(g, lo, false, plot);
        if (xl->parsed()) return cmd_lacunary(g, lo, true, plot);
        if (scan->parsed()) {
            if (!app.get_option("--format")->count()) g.format = "csv";
            return cmd_polyscan(g, so, plot);
        }
        if (xp->parsed()) return cmd_polyscan(g, so, plot);
        if (cf->parsed()) return cmd_cf(g, cfx, max_terms);
        if (elim->parsed() || xe->parsed()) return cmd_elimsuite(g, ec, plot);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const InconsistentSeeds& e) {
        std::cerr << "inconsistent seeds: " << e.what() << "\n";
        return kSeeds;
    } catch (const Underdetermined& e) {
        std::cerr << "underdetermined: " << e.what() << " (" << e.missing() << " more seed(s) needed)\n";
        return kSeeds;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kParse;
    } catch (const PointOutOfRange& e) {
        std::cerr << "point out of range: " << e.what() << "\n";
        return kParse;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kPrecision;
    } catch (const NotRegular& e) {
        std::cerr << "not regular: " << e.what() << "\n";
        return kNegative;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNegative;
    }
    return kOk;
}
