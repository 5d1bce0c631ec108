#include "conemetric/json_io.hpp"

#include <memory>

#include "json.hpp"

namespace conemetric {

using nlohmann::json;

Divisor DivisorInput::divisor() const {
    std::vector<DivisorEntry> entries;
    entries.reserve(points.size());
    for (const auto& p : points) entries.push_back({p.label, p.beta});
    return Divisor(surface, std::move(entries));
}

TorusDivisor DivisorInput::torus_divisor() const {
    if (surface.genus != 1)
        throw hypothesis_error("unsupported surface: torus only");
    TorusDivisor d;
    for (const auto& p : points) {
        if (!p.at)
            throw configuration_error("point '" + p.label +
                                      "' needs a position \"at\": [a, b] to be solvable");
        d.points.push_back({p.label, p.beta, p.at->first, p.at->second});
    }
    return d;
}

namespace {

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("input is not valid JSON");
    return j;
}

double number_at(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw parse_error(std::string("expected a number at \"") + key + "\"");
    return j[key].get<double>();
}

bool bool_at(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_boolean())
        throw parse_error(std::string("expected a boolean at \"") + key + "\"");
    return j[key].get<bool>();
}

std::string string_at(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw parse_error(std::string("expected a string at \"") + key + "\"");
    return j[key].get<std::string>();
}

std::pair<double, double> pair_at(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
        !j[key][0].is_number() || !j[key][1].is_number())
        throw parse_error(std::string("expected a pair of numbers at \"") + key + "\"");
    return {j[key][0].get<double>(), j[key][1].get<double>()};
}

DivisorInput divisor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("surface") || !j.contains("points"))
        throw parse_error("divisor needs \"surface\" and \"points\"");
    const json& s = j["surface"];
    if (!s.is_object() || !s.contains("genus") || !s["genus"].is_number_integer())
        throw parse_error("\"surface\" needs an integer \"genus\"");
    DivisorInput d;
    d.surface = SurfaceSpec(s["genus"].get<int>());
    if (!j["points"].is_array()) throw parse_error("\"points\" must be an array");
    for (const json& pj : j["points"]) {
        if (!pj.is_object()) throw parse_error("each point must be an object");
        DivisorInput::Point p;
        p.label = string_at(pj, "label");
        p.beta = number_at(pj, "beta");
        if (pj.contains("at")) p.at = pair_at(pj, "at");
        d.points.push_back(std::move(p));
    }
    return d;
}

CurvatureSummary curvature_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("\"curvature\" must be an object");
    CurvatureSummary k;
    k.sup_positive = bool_at(j, "sup_positive");
    k.nonpositive = bool_at(j, "nonpositive");
    k.not_identically_zero = bool_at(j, "not_identically_zero");
    k.identically_zero = bool_at(j, "identically_zero");
    if (j.contains("integrability_exponent"))
        k.integrability_exponent = number_at(j, "integrability_exponent");
    if (j.contains("integral_sign_vs_flat")) {
        std::string s = string_at(j, "integral_sign_vs_flat");
        using Sign = CurvatureSummary::IntegralSign;
        if (s == "negative") k.integral_sign_vs_flat = Sign::negative;
        else if (s == "zero") k.integral_sign_vs_flat = Sign::zero;
        else if (s == "positive") k.integral_sign_vs_flat = Sign::positive;
        else if (s == "unknown") k.integral_sign_vs_flat = Sign::unknown;
        else throw parse_error("integral_sign_vs_flat must be negative/zero/positive/unknown");
    }
    k.validate();
    return k;
}

ModelMetric model_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("model must be an object");
    std::string type = string_at(j, "type");
    if (type == "flat_cone") return ModelMetric(FlatCone(number_at(j, "alpha")));
    if (type == "football") return ModelMetric(Football(number_at(j, "beta")));
    if (type == "round_sphere") return ModelMetric(RoundSphere{});
    if (type == "multi_cone") {
        if (!j.contains("cones") || !j["cones"].is_array())
            throw parse_error("multi_cone needs a \"cones\" array");
        std::vector<MultiCone::Cone> cones;
        for (const json& cj : j["cones"]) {
            auto [x, y] = pair_at(cj, "at");
            cones.push_back({{x, y}, number_at(cj, "beta"), string_at(cj, "label")});
        }
        return ModelMetric(MultiCone(std::move(cones)));
    }
    if (type == "pullback") {
        if (!j.contains("degree") || !j["degree"].is_number_integer())
            throw parse_error("pullback needs an integer \"degree\"");
        if (!j.contains("base")) throw parse_error("pullback needs a \"base\" model");
        auto base = std::make_shared<ModelMetric>(model_from_json(j["base"]));
        return ModelMetric(Pullback(std::move(base), j["degree"].get<int>()));
    }
    throw parse_error("unknown model type \"" + type + "\"");
}

json to_json(const JsonValue& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, RawJson>) return parse_or_throw(x.text);
            else return json(x);
        },
        v);
}

json object_from(const std::vector<JsonField>& fields) {
    json j = json::object();
    for (const auto& [k, v] : fields) j[k] = to_json(v);
    return j;
}

} // namespace

DivisorInput parse_divisor_input(const std::string& text) {
    return divisor_from_json(parse_or_throw(text));
}

CheckInput parse_check_input(const std::string& text) {
    json j = parse_or_throw(text);
    CheckInput in;
    if (j.is_object() && j.contains("divisor")) {
        in.divisor = divisor_from_json(j["divisor"]);
        if (j.contains("curvature")) in.curvature = curvature_from_json(j["curvature"]);
        if (j.contains("tang")) {
            const json& t = j["tang"];
            if (!t.is_object()) throw parse_error("\"tang\" must be an object");
            in.tang = TangInput{number_at(t, "integral_K_dA0"), bool_at(t, "beta_leq_alpha")};
        }
    } else {
        in.divisor = divisor_from_json(j);
    }
    return in;
}

ModelMetric parse_model(const std::string& text) {
    return model_from_json(parse_or_throw(text));
}

std::string json_object(const std::vector<JsonField>& fields) {
    return object_from(fields).dump();
}

std::string json_array(const std::vector<JsonValue>& items) {
    json j = json::array();
    for (const auto& v : items) j.push_back(to_json(v));
    return j.dump();
}

std::string divisor_json(const Divisor& d) {
    json j;
    j["surface"] = {{"genus", d.surface.genus}};
    j["points"] = json::array();
    for (const auto& e : d.entries)
        j["points"].push_back({{"label", e.label}, {"beta", e.beta}});
    return j.dump();
}

std::string verdict_json(const std::string& condition, bool holds,
                         const std::vector<JsonField>& witness) {
    json j;
    j["condition"] = condition;
    j["holds"] = holds;
    j["witness"] = object_from(witness);
    if (j["witness"].contains("lhs")) j["lhs"] = j["witness"]["lhs"];
    if (j["witness"].contains("rhs")) j["rhs"] = j["witness"]["rhs"];
    return j.dump(2);
}

std::string solve_report_json(const SolveReport& r, const std::vector<JsonField>& config) {
    json j;
    j["mode"] = r.mode;
    j["grid"] = {{"n", r.grid.n}, {"tau_re", r.grid.tau.real()}, {"tau_im", r.grid.tau.imag()}};
    json pts = json::array();
    for (const auto& p : r.divisor.points)
        pts.push_back({{"label", p.label}, {"beta", p.beta}, {"at", {p.a, p.b}}});
    j["divisor"] = {{"surface", {{"genus", 1}}}, {"points", pts}};
    j["delta"] = r.delta;
    j["cutoff"] = r.cutoff;
    j["iterations"] = r.iterations;
    j["residual_sup"] = r.residual_sup;
    j["curvature_error_sup"] = r.curvature_error_sup;
    j["curvature_region_factor"] = r.curvature_region_factor;
    json angles = json::array();
    for (const auto& a : r.cone_angle_errors)
        angles.push_back({{"label", a.label},
                          {"theta_expected", a.theta_expected},
                          {"theta_estimated", a.theta_estimated},
                          {"error", a.error}});
    j["cone_angles"] = angles;
    if (!r.newton_history.empty()) j["newton_history"] = r.newton_history;
    j["compatibility_defects"] = r.raw_compat_defects;
    j["gauss_bonnet"] = {{"total", r.gauss_bonnet.total},
                         {"expected", r.gauss_bonnet.expected},
                         {"residual", r.gauss_bonnet.residual}};
    j["tolerances"] = {{"newton", r.newton_tolerance},
                       {"poisson_compatibility", SpectralEngine::compatibility_tolerance},
                       {"cg_relative", 1e-13}};
    if (r.seed) j["seed"] = *r.seed;
    j["u_sup"] = r.u.sup_abs();
    j["w_total_sup"] = r.w_total.sup_abs();
    j["config"] = object_from(config);
    return j.dump(2);
}

std::string pretty_json(const std::string& text) {
    return parse_or_throw(text).dump(2);
}

} // namespace conemetric
