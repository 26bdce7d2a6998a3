#pragma once

#include "mahler/mahler/equation.hpp"
#include "mahler/mahler/regularity.hpp"
#include "mahler/mahler/series.hpp"
#include "mahler/mahler/system.hpp"

#include <json.hpp>

#include <filesystem>
#include <string_view>

namespace mahler {

using Json = nlohmann::ordered_json;

/// Equation document:
///   {"q": 2, "coeffs": ["1", "-1"], "rhs": "z", "seeds": ["0"], "name": "..."}
/// Coefficient and rhs strings may be rational functions; they are cleared
/// to polynomials. Throws ParseError (bad JSON or expression, with offset)
/// or InvalidInput (missing or mistyped fields).
MahlerEquation equation_from_json(const Json& doc);
MahlerEquation parse_equation_document(std::string_view text);
MahlerEquation load_equation(const std::filesystem::path& path);

Json to_json(const MahlerEquation& eq);
Json to_json(const TruncatedSeries& s);
Json to_json(const MahlerSystem& sys);
Json to_json(const RegularityReport& r);
Json to_json(const Valuation& v);

}  // namespace mahler
