#include "mahler/siegel/multiplicity.hpp"

#include "mahler/errors.hpp"
#include "mahler/siegel/aux_form.hpp"

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace mahler {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void exponents_of_degree(std::size_t k, long d, Exponents& cur, std::vector<Exponents>& out) {
    if (cur.size() + 1 == k) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long e = d; e >= 0; --e) {
        cur.push_back(e);
        exponents_of_degree(k, d - e, cur, out);
        cur.pop_back();
    }
}

AuxForm random_form(std::size_t t, std::size_t M, std::size_t N, long radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>(2 * radius + 1);
    std::vector<Exponents> monos;
    Exponents cur;
    exponents_of_degree(t + 1, static_cast<long>(N), cur, monos);
    AuxForm f(t + 1);
    for (const auto& e : monos) {
        std::vector<Rat> c(M + 1);
        for (auto& v : c) v = Rat(static_cast<long>(rng() % span) - radius);
        f.add_term(e, Poly(std::move(c)));
    }
    if (f.is_zero()) f.add_term(monos.front(), Poly::constant(Rat(1)));
    return f;
}

MultiplicityRow measure(const AuxForm& f, const std::vector<TruncatedSeries>& series, const MultiplicityConfig& cfg,
                        std::size_t M, std::size_t N, std::size_t trial, std::uint64_t seed, std::size_t t,
                        std::string flag) {
    MultiplicityRow row{M, N, trial, seed, std::nullopt, 0, Rat(0), std::move(flag)};
    std::size_t w = cfg.initial_window;
    for (;;) {
        Valuation v = achieved_valuation(f, series, w);
        if (v.is_exact()) {
            row.achieved_val = v.value;
            row.window = w;
            Int denom = Int(static_cast<unsigned long>(M)) * pow(Int(static_cast<unsigned long>(N)), t);
            row.ratio = Rat(Int(v.value), denom);
            row.ratio.canonicalize();
            return row;
        }
        row.window = static_cast<std::size_t>(v.value);
        if (w >= cfg.max_window || row.window < w) break;
        w *= 2;
    }
    row.flag = "zero";
    return row;
}

std::vector<MultiplicityRow> scan_cell(const std::vector<TruncatedSeries>& series, const MultiplicityConfig& cfg,
                                       std::size_t M, std::size_t N) {
    const std::size_t t = series.size();
    std::vector<MultiplicityRow> rows;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        std::uint64_t s = trial_seed(cfg.seed, M, N, trial);
        rows.push_back(measure(random_form(t, M, N, cfg.radius, s), series, cfg, M, N, trial, s, t, ""));
    }
    if (cfg.include_aux) {
        try {
            AuxResult aux = aux_form(series, N, std::nullopt, M);
            rows.push_back(measure(aux.form, series, cfg, M, N, cfg.trials, 0, t, "aux"));
        } catch (const InsufficientTruncation&) {
        }
    }
    return rows;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t M, std::size_t N, std::size_t trial) {
    std::uint64_t key = (static_cast<std::uint64_t>(M) << 40) ^ (static_cast<std::uint64_t>(N) << 20) ^ trial;
    return splitmix(seed ^ splitmix(key));
}

MultiplicityResult multiplicity_scan(const std::vector<TruncatedSeries>& series, const MultiplicityConfig& cfg) {
    if (series.empty()) throw InvalidInput("multiplicity scan needs at least one series");
    if (cfg.mmax == 0 || cfg.nmax == 0) throw InvalidInput("grid bounds must be positive");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t M = 1; M <= cfg.mmax; ++M)
        for (std::size_t N = 1; N <= cfg.nmax; ++N) cells.emplace_back(M, N);

    std::vector<std::vector<MultiplicityRow>> out(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
            out[i] = scan_cell(series, cfg, cells[i].first, cells[i].second);
    };
    const unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    MultiplicityResult res;
    res.t = series.size();
    for (auto& cell : out)
        for (auto& row : cell) {
            if (row.achieved_val && (!res.c_fit || row.ratio > *res.c_fit)) res.c_fit = row.ratio;
            res.rows.push_back(std::move(row));
        }
    return res;
}

MultiplicityResult multiplicity_scan(const std::vector<MahlerEquation>& eqs, const MultiplicityConfig& cfg) {
    std::vector<TruncatedSeries> series;
    for (const auto& eq : eqs) series.push_back(expand_series(eq, cfg.max_window));
    return multiplicity_scan(series, cfg);
}

std::string multiplicity_csv(const MultiplicityResult& r) {
    std::ostringstream os;
    os << "M,N,trial,seed,achieved_val,ratio_num,ratio_den,flag\n";
    for (const auto& row : r.rows) {
        os << row.M << ',' << row.N << ',' << row.trial << ',' << row.seed << ',';
        if (row.achieved_val)
            os << *row.achieved_val << ',' << row.ratio.get_num().get_str() << ',' << row.ratio.get_den().get_str();
        else
            os << ">=" << row.window << ",,";
        os << ',' << row.flag << '\n';
    }
    return os.str();
}

}  // namespace mahler
