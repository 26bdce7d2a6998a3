#include "mahler/mahler/document.hpp"

#include "mahler/algebra/parse.hpp"
#include "mahler/errors.hpp"

#include <fstream>
#include <sstream>

namespace mahler {

namespace {

RatFun field_ratfun(const Json& v, const std::string& where) {
    if (!v.is_string()) throw InvalidInput(where + " must be a string");
    try {
        return parse_ratfun(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what(), e.offset());
    }
}

}  // namespace

MahlerEquation equation_from_json(const Json& doc) {
    if (!doc.is_object()) throw InvalidInput("equation document must be a JSON object");
    if (!doc.contains("q") || !doc["q"].is_number_integer()) throw InvalidInput("field 'q' must be an integer");
    if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) throw InvalidInput("field 'coeffs' must be an array");
    const long q = doc["q"].get<long>();
    std::vector<RatFun> coeffs;
    for (std::size_t i = 0; i < doc["coeffs"].size(); ++i)
        coeffs.push_back(field_ratfun(doc["coeffs"][i], "coeffs[" + std::to_string(i) + "]"));
    RatFun rhs = doc.contains("rhs") ? field_ratfun(doc["rhs"], "rhs") : RatFun();
    std::vector<Rat> seeds;
    if (doc.contains("seeds")) {
        if (!doc["seeds"].is_array()) throw InvalidInput("field 'seeds' must be an array");
        for (std::size_t i = 0; i < doc["seeds"].size(); ++i) {
            const Json& s = doc["seeds"][i];
            if (s.is_number_integer())
                seeds.push_back(Rat(s.get<long>()));
            else if (s.is_string())
                seeds.push_back(parse_rational(s.get<std::string>()));
            else
                throw InvalidInput("seeds[" + std::to_string(i) + "] must be a rational string");
        }
    }
    std::string name = doc.value("name", std::string());
    return MahlerEquation::from_rational(q, coeffs, rhs, std::move(seeds), std::move(name));
}

MahlerEquation parse_equation_document(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed JSON", e.byte > 0 ? e.byte - 1 : 0);
    }
    return equation_from_json(doc);
}

MahlerEquation load_equation(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_equation_document(buf.str());
}

Json to_json(const MahlerEquation& eq) {
    Json j;
    j["q"] = eq.q();
    j["coeffs"] = Json::array();
    for (const auto& c : eq.coeffs()) j["coeffs"].push_back(to_string(c));
    j["rhs"] = to_string(eq.rhs());
    j["seeds"] = Json::array();
    for (const auto& s : eq.seeds()) j["seeds"].push_back(s.get_str());
    j["name"] = eq.name();
    return j;
}

Json to_json(const TruncatedSeries& s) {
    Json j = Json::array();
    for (const auto& c : s.coeffs) j.push_back(c.get_str());
    return j;
}

Json to_json(const MahlerSystem& sys) {
    Json j;
    j["q"] = sys.q;
    j["size"] = sys.size();
    j["provenance"] = to_string(sys.provenance);
    j["leading_constant"] = sys.leading_constant;
    Json rows = Json::array();
    for (std::size_t i = 0; i < sys.A.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < sys.A.cols(); ++k) row.push_back(to_string(sys.A(i, k)));
        rows.push_back(row);
    }
    j["A"] = rows;
    j["det"] = to_string(sys.A.determinant());
    return j;
}

Json to_json(const RegularityReport& r) {
    Json j;
    j["alpha"] = r.alpha.get_str();
    j["q"] = r.q;
    j["regular"] = r.regular;
    j["checked_up_to"] = r.checked_up_to;
    j["failure_k"] = r.failure_k ? Json(*r.failure_k) : Json(nullptr);
    j["witness"] = r.witness ? Json(r.witness->get_str()) : Json(nullptr);
    j["r_min"] = r.r_min.get_str();
    j["singular_polys"] = Json::array();
    for (const auto& p : r.singular_polys) j["singular_polys"].push_back(to_string(p));
    return j;
}

Json to_json(const Valuation& v) {
    if (v.is_infinite()) return Json{{"kind", "infinite"}};
    return Json{{"kind", v.is_exact() ? "exact" : "at_least"}, {"value", v.value}};
}

}  // namespace mahler
