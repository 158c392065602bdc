#include "rr/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace rr {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("scenario: missing field '") + key + "'");
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string("scenario: field '") + key + "' is not a number");
    return j.at(key).get<double>();
}

cplx complex_field(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_object() && v.contains("re") && v.contains("im") && v["re"].is_number() && v["im"].is_number())
        return {v["re"].get<double>(), v["im"].get<double>()};
    throw std::invalid_argument(std::string("field '") + key + "' must be a number or {\"re\", \"im\"}");
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
    return buf;
}

}  // namespace

GaussianScenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("scenario must be a JSON object");
    GaussianScenario s;
    s.h31 = number(j, "h31");
    s.h42 = number(j, "h42");
    s.h21 = number(j, "h21");
    s.h12 = number(j, "h12");
    s.h32 = complex_field(j, "h32");
    s.h41 = complex_field(j, "h41");
    s.P1 = number(j, "P1");
    s.P2 = number(j, "P2");
    if (s.P1 < 0 || s.P2 < 0) throw std::invalid_argument("scenario: powers must be nonnegative");
    return s;
}

json to_json(const GaussianScenario& s) {
    return json{{"h31", s.h31}, {"h42", s.h42}, {"h21", s.h21}, {"h12", s.h12}, {"h32", complex_json(s.h32)},
                {"h41", complex_json(s.h41)}, {"P1", s.P1}, {"P2", s.P2}};
}

PowerSplit split_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("split must be a JSON object");
    PowerSplit p;
    p.alpha1 = complex_field(j, "alpha1");
    p.alpha2 = complex_field(j, "alpha2");
    p.var_10c = number(j, "var_10c");
    p.var_10n = number(j, "var_10n");
    p.var_11n = number(j, "var_11n");
    p.var_20c = number(j, "var_20c");
    p.var_20n = number(j, "var_20n");
    p.var_22n = number(j, "var_22n");
    return p;
}

json to_json(const PowerSplit& p) {
    return json{{"alpha1", complex_json(p.alpha1)}, {"alpha2", complex_json(p.alpha2)},
                {"var_10c", p.var_10c},             {"var_10n", p.var_10n},
                {"var_11n", p.var_11n},             {"var_20c", p.var_20c},
                {"var_20n", p.var_20n},             {"var_22n", p.var_22n}};
}

json to_json(const RegionMetrics& m) {
    return json{{"max_r1", m.max_r1}, {"max_r2", m.max_r2}, {"max_sum", m.max_sum}, {"symmetric_rate", m.symmetric_rate}};
}

std::string frontier_csv(const RatePolygon& p) {
    std::string out = "R1,R2\n";
    for (const auto& v : p.vertices) out += fmt(v.r1) + "," + fmt(v.r2) + "\n";
    return out;
}

json frontier_json(const RatePolygon& p) {
    json verts = json::array();
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        json v{{"R1", p.vertices[i].r1}, {"R2", p.vertices[i].r2}, {"split", nullptr}};
        if (i < p.provenance.size() && p.provenance[i]) v["split"] = to_json(*p.provenance[i]);
        verts.push_back(v);
    }
    return json{{"metrics", p.empty() ? json(nullptr) : to_json(metrics(p))}, {"vertices", verts}};
}

}  // namespace rr
