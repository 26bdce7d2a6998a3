#pragma once

#include "mahler/algebra/form.hpp"
#include "mahler/mahler/series.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace mahler {

/// R(z, 1, f_1, ..., f_t) mod z^order, with X_0 mapped to 1 and X_i to y[i-1].
Poly compose_form(const AuxForm& R, const std::vector<Poly>& y, std::size_t order);

/// Same with every variable (including X_0) mapped to y[i].
Poly substitute_form(const AuxForm& R, const std::vector<Poly>& y, std::size_t order);

/// val_z R(z, 1, f_1, ..., f_t). The composition is known exactly below the
/// smallest guaranteed order of the series; if it vanishes there the result
/// is AtLeast(window), the zero-to-window marker.
Valuation achieved_valuation(const AuxForm& R, const std::vector<TruncatedSeries>& series);
Valuation achieved_valuation(const AuxForm& R, const std::vector<TruncatedSeries>& series, std::size_t window);

struct AuxResult {
    AuxForm form;
    Valuation achieved;
    /// Every kernel vector composed to zero on the window; form is a witness.
    bool zero_composition = false;
    std::size_t unknowns = 0;
    std::size_t conditions = 0;
    std::size_t kernel_dim = 0;
};

/// Number of coefficients of a form homogeneous of degree n in t+1
/// variables with z-degree at most m.
std::size_t aux_unknowns(std::size_t t, std::size_t m, std::size_t n);

/// Nonzero integer form, homogeneous of X-degree n in X_0..X_t with
/// deg_z <= m, whose composition with (1, f_1, ..., f_t) vanishes to order
/// `conditions` (default: unknowns - 1).
///
/// Throws InvalidInput if conditions >= unknowns, MixedBase for series of
/// different bases, InsufficientTruncation unless every series is exact
/// beyond conditions + n.
AuxResult aux_form(const std::vector<TruncatedSeries>& series, std::size_t n,
                   std::optional<std::size_t> conditions = std::nullopt, std::optional<std::size_t> m = std::nullopt);

/// {"deg_X": d, "deg_z": e, "nvars": k, "terms": [{"exps": [...], "poly": "..."}]}
nlohmann::ordered_json form_to_json(const AuxForm& f);
AuxForm form_from_json(const nlohmann::ordered_json& doc);

}  // namespace mahler
