#include "mahler/liouville/scan.hpp"

#include "mahler/errors.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace mahler {

namespace {

/// Memoized xi enclosures per precision, safe for concurrent readers.
class XiCache {
public:
    explicit XiCache(const XiSource& src) : src_(src) {}
    Enclosure at(long precision) {
        std::lock_guard lock(mu_);
        auto it = cache_.find(precision);
        if (it == cache_.end()) it = cache_.emplace(precision, src_(precision)).first;
        return it->second;
    }

private:
    const XiSource& src_;
    std::mutex mu_;
    std::map<long, Enclosure> cache_;
};

struct Eval {
    std::optional<Dyadic> abs_lo;  // empty for a candidate relation
    bool exact_zero = false;
    long precision = 0;
};

Eval evaluate(const std::vector<long>& c, XiCache& xi, const ScanConfig& cfg) {
    for (long p = cfg.start_precision;; p *= 2) {
        const Enclosure x = xi.at(p);
        Enclosure v(Dyadic(0), p);
        for (std::size_t i = c.size(); i-- > 0;) v = v * x + Enclosure(Dyadic(c[i]), p);
        if (!v.contains_zero()) return Eval{abs(v).lo(), false, p};
        if (v.is_point()) return Eval{std::nullopt, true, p};
        if (p >= cfg.max_precision) return Eval{std::nullopt, false, p};
    }
}

std::vector<long> decode(std::uint64_t index, long d, long h) {
    std::vector<long> c(static_cast<std::size_t>(d) + 1);
    const auto base = static_cast<std::uint64_t>(2 * h + 1);
    for (auto& v : c) {
        v = static_cast<long>(index % base) - h;
        index /= base;
    }
    return c;
}

struct Best {
    Dyadic value;
    std::uint64_t index = 0;
    long precision = 0;
    bool set = false;

    void offer(const Dyadic& v, std::uint64_t i, long p) {
        if (!set || v < value || (v == value && i < index)) {
            value = v;
            index = i;
            precision = p;
            set = true;
        }
    }
};

bool primitive(const std::vector<long>& c) {
    long g = 0;
    for (long v : c) g = std::gcd(g, v);
    return g == 1;
}

}  // namespace

std::vector<long> default_ladder(long hmax) {
    std::vector<long> out;
    for (long h = 2; h <= hmax; h *= 2) out.push_back(h);
    if (out.empty() || out.back() != hmax) out.push_back(hmax);
    return out;
}

ScanResult poly_min_scan(const XiSource& xi, const ScanConfig& cfg) {
    if (cfg.dmax < 1 || cfg.hmax < 1) throw InvalidInput("scan needs dmax >= 1 and hmax >= 1");
    if (cfg.start_precision < 2) throw InvalidInput("scan precision too small");
    const std::vector<long> ladder = cfg.ladder.empty() ? default_ladder(cfg.hmax) : cfg.ladder;
    for (long h : ladder)
        if (h < 1 || h > cfg.hmax) throw InvalidInput("ladder heights must lie in [1, hmax]");

    const long d = cfg.dmax, h = cfg.hmax;
    std::uint64_t total = 1;
    for (long i = 0; i <= d; ++i) total *= static_cast<std::uint64_t>(2 * h + 1);

    XiCache cache(xi);
    const std::size_t cells = static_cast<std::size_t>(d) * ladder.size();
    const unsigned workers = std::max(1u, cfg.workers);
    std::vector<std::vector<Best>> partial(workers, std::vector<Best>(cells));
    std::vector<std::vector<std::pair<std::uint64_t, CandidateRelation>>> found(workers);

    constexpr std::uint64_t kBlock = 1024;
    std::atomic<std::uint64_t> next{0};
    auto work = [&](unsigned w) {
        for (std::uint64_t start; (start = next.fetch_add(kBlock)) < total;) {
            const std::uint64_t stop = std::min(total, start + kBlock);
            for (std::uint64_t i = start; i < stop; ++i) {
                auto c = decode(i, d, h);
                long deg = d;
                while (deg >= 0 && c[static_cast<std::size_t>(deg)] == 0) --deg;
                if (deg < 0 || c[static_cast<std::size_t>(deg)] < 0) continue;
                long height = 0;
                for (long v : c) height = std::max(height, std::abs(v));
                Eval e = evaluate(c, cache, cfg);
                if (!e.abs_lo) {
                    if (primitive(c)) {
                        c.resize(static_cast<std::size_t>(std::max(deg, 0L)) + 1);
                        found[w].push_back({i, CandidateRelation{c, e.exact_zero, e.precision}});
                    }
                    continue;
                }
                for (long dd = std::max(deg, 1L); dd <= d; ++dd)
                    for (std::size_t k = 0; k < ladder.size(); ++k)
                        if (height <= ladder[k])
                            partial[w][static_cast<std::size_t>(dd - 1) * ladder.size() + k].offer(*e.abs_lo, i,
                                                                                                  e.precision);
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    ScanResult res;
    for (long dd = 1; dd <= d; ++dd)
        for (std::size_t k = 0; k < ladder.size(); ++k) {
            Best best;
            for (const auto& p : partial) {
                const Best& b = p[static_cast<std::size_t>(dd - 1) * ladder.size() + k];
                if (b.set) best.offer(b.value, b.index, b.precision);
            }
            ScanRow row;
            row.d = dd;
            row.H = ladder[k];
            if (best.set) {
                row.min_abs_lo = best.value;
                auto c = decode(best.index, d, h);
                c.resize(static_cast<std::size_t>(dd) + 1);
                row.argmin = c;
                row.precision_bits = best.precision;
            }
            if (cfg.bound) row.predicted_log = bound_profile_log(*cfg.bound, dd, Int(ladder[k]));
            res.rows.push_back(std::move(row));
        }
    std::vector<std::pair<std::uint64_t, CandidateRelation>> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [i, rel] : all) res.relations.push_back(std::move(rel));
    return res;
}

std::string coeffs_string(const std::vector<long>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
    return s;
}

std::string scan_csv(const ScanResult& r, int digits) {
    std::ostringstream os;
    os << "d,H,min_abs_lo,argmin_coeffs,predicted_lo,predicted_hi,precision_bits\n";
    for (const auto& row : r.rows) {
        os << row.d << ',' << row.H << ',';
        os << (row.min_abs_lo.is_zero() ? "0" : row.min_abs_lo.to_decimal(digits, Round::Down)) << ',';
        os << coeffs_string(row.argmin) << ',';
        if (row.predicted_log)
            os << row.predicted_log->lo().to_decimal(digits, Round::Down) << ','
               << row.predicted_log->hi().to_decimal(digits, Round::Up);
        else
            os << ',';
        os << ',' << row.precision_bits << '\n';
    }
    return os.str();
}

}  // namespace mahler
