#pragma once

#include "mahler/mahler/equation.hpp"
#include "mahler/mahler/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

struct MultiplicityConfig {
    std::size_t mmax = 4;
    std::size_t nmax = 4;
    std::size_t trials = 8;
    std::uint64_t seed = 1;
    /// Random coefficients are drawn uniformly from [-radius, radius].
    long radius = 10;
    std::size_t initial_window = 64;
    std::size_t max_window = 2048;
    /// Also measure the aux_form construction in every cell.
    bool include_aux = true;
    unsigned workers = 1;
};

struct MultiplicityRow {
    std::size_t M = 0, N = 0;
    /// Trial index; the aux row of a cell uses index `trials`.
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    /// Empty when the composition vanished up to `window`.
    std::optional<long> achieved_val;
    std::size_t window = 0;
    /// achieved_val / (M * N^t).
    Rat ratio;
    /// "" for a random form, "aux" for the constructed form, "zero" when flagged.
    std::string flag;
};

struct MultiplicityResult {
    std::size_t t = 0;
    std::vector<MultiplicityRow> rows;
    /// Largest ratio over rows with a finite valuation.
    std::optional<Rat> c_fit;
};

/// Seed used for trial `trial` of cell (M, N).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t M, std::size_t N, std::size_t trial);

/// Scans random forms of deg_z <= M, homogeneous of X-degree N, composed with
/// (1, f_1, ..., f_t). Rows are ordered by (M, N, trial) for any worker count.
MultiplicityResult multiplicity_scan(const std::vector<TruncatedSeries>& series, const MultiplicityConfig& cfg);
MultiplicityResult multiplicity_scan(const std::vector<MahlerEquation>& eqs, const MultiplicityConfig& cfg);

/// Columns M,N,trial,seed,achieved_val,ratio_num,ratio_den,flag.
std::string multiplicity_csv(const MultiplicityResult& r);

}  // namespace mahler
