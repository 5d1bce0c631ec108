#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conemetric/divisor.hpp"
#include "conemetric/model_metrics.hpp"
#include "conemetric/solver.hpp"

// String-faced JSON boundary. The parser implementation lives in the .cpp
// so installed headers carry no third-party includes.

namespace conemetric {

// Divisor as read from disk: labels and orders for the checkers, plus
// optional lattice positions "at": [a, b] needed by the torus solver.
struct DivisorInput {
    struct Point {
        std::string label;
        double beta = 0.0;
        std::optional<std::pair<double, double>> at;
    };
    SurfaceSpec surface;
    std::vector<Point> points;

    Divisor divisor() const;
    // genus-1 check plus positions for every point
    TorusDivisor torus_divisor() const;
};

struct TangInput {
    double integral_K_dA0 = 0.0;
    bool beta_leq_alpha = false;
};

// Input to the check command: either a bare divisor object or a wrapper
// {"divisor": ..., "curvature": ..., "tang": ...} when a condition needs
// more than the divisor.
struct CheckInput {
    DivisorInput divisor;
    std::optional<CurvatureSummary> curvature;
    std::optional<TangInput> tang;
};

DivisorInput parse_divisor_input(const std::string& text);
CheckInput parse_check_input(const std::string& text);

// Tagged unions keyed by "type": flat_cone {alpha}, multi_cone {cones:
// [{label, at: [x, y], beta}]}, football {beta}, round_sphere {},
// pullback {degree, base}.
ModelMetric parse_model(const std::string& text);

// Minimal assembly layer for reports. RawJson splices a pre-serialized
// value verbatim.
struct RawJson {
    std::string text;
};
using JsonValue = std::variant<bool, long long, double, std::string, RawJson>;
using JsonField = std::pair<std::string, JsonValue>;

std::string json_object(const std::vector<JsonField>& fields);
std::string json_array(const std::vector<JsonValue>& items);
std::string divisor_json(const Divisor& d);

// {"condition", "holds", "witness": {...}}, with witness entries named lhs
// and rhs mirrored at the top level.
std::string verdict_json(const std::string& condition, bool holds,
                         const std::vector<JsonField>& witness);

// Full report: grid, divisor with snapped positions, every tolerance and
// residual, plus the effective run configuration passed by the caller.
std::string solve_report_json(const SolveReport& r, const std::vector<JsonField>& config);

// Reindented copy of any JSON document (parse errors propagate).
std::string pretty_json(const std::string& text);

} // namespace conemetric
