#pragma once

#include "mahler/algebra/enclosure.hpp"
#include "mahler/liouville/lacunary.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

/// Enclosure of xi at the requested working precision (bits). Narrower
/// enclosures are expected as the precision grows.
using XiSource = std::function<Enclosure(long precision)>;

struct ScanConfig {
    long dmax = 1;
    long hmax = 2;
    /// Heights reported; default {2, 4, 8, ..., hmax} with hmax appended.
    std::vector<long> ladder;
    std::optional<BoundProfile> bound;
    long start_precision = 128;
    long max_precision = 4096;
    unsigned workers = 1;
};

struct ScanRow {
    long d = 0;
    long H = 0;
    /// Certified lower bound on min |P(xi)| over the nonvanishing polynomials.
    Dyadic min_abs_lo;
    /// Coefficients c_0, ..., c_d of the minimizer.
    std::vector<long> argmin;
    long precision_bits = 0;
    std::optional<Enclosure> predicted_log;
};

struct CandidateRelation {
    std::vector<long> coeffs;
    /// P(xi) evaluated to exactly zero rather than merely straddling it.
    bool exact = false;
    long precision_bits = 0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    /// Primitive polynomials whose value could not be separated from zero.
    std::vector<CandidateRelation> relations;
};

std::vector<long> default_ladder(long hmax);

/// Enumerates every nonzero integer polynomial of degree <= dmax and height
/// <= hmax (leading coefficient positive), evaluates it at xi with precision
/// doubling until the value excludes zero, and reports the minima for each
/// (d, H) on the ladder. Values that still straddle zero at max_precision are
/// listed as candidate relations and left out of the minima.
ScanResult poly_min_scan(const XiSource& xi, const ScanConfig& cfg);

/// Columns d,H,min_abs_lo,argmin_coeffs,predicted_lo,predicted_hi,precision_bits.
std::string scan_csv(const ScanResult& r, int digits = 12);

std::string coeffs_string(const std::vector<long>& c);

}  // namespace mahler
