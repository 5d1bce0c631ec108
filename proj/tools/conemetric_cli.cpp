// conemetric: checkers, model-metric evaluations, and torus solves with
// machine-readable reports.
//
// Exit codes: 0 verdict delivered (holding or not), 2 malformed input,
// 3 hypothesis or configuration violation, 4 numerical failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conemetric/json_io.hpp"
#include "conemetric/mesh.hpp"

namespace cm = conemetric;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cm::parse_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cm::configuration_error("cannot write output file: " + path);
    out << text;
}

int env_threads() {
    const char* s = std::getenv("CONEMETRIC_THREADS");
    if (!s) return 1;
    int v = std::atoi(s);
    return v >= 1 ? v : 1;
}

std::string case_letter(cm::PrescribedCase c) {
    switch (c) {
        case cm::PrescribedCase::a: return "a";
        case cm::PrescribedCase::b: return "b";
        case cm::PrescribedCase::c: return "c";
        default: return "none";
    }
}

struct CheckArgs {
    std::string input;
    std::string condition;
    double tol = 0.0;
};

int run_check(const CheckArgs& a) {
    cm::CheckInput in = cm::parse_check_input(slurp(a.input));
    // orders quantize at the parse boundary; every test downstream is exact
    if (a.tol > 0.0)
        for (auto& p : in.divisor.points) p.beta = std::round(p.beta / a.tol) * a.tol;
    cm::Divisor d = in.divisor.divisor();

    if (a.condition == "flat") {
        bool holds = cm::check_flat_representable(d);
        std::cout << cm::verdict_json("flat", holds,
                                      {{"lhs", cm::euler_char(d)}, {"rhs", 0.0}})
                  << "\n";
        return 0;
    }
    if (a.condition == "luo-tian") {
        cm::LuoTianReport r = cm::check_luo_tian(d);
        bool holds = r.verdict == cm::LuoTianVerdict::representable_uniquely;
        std::string verdict =
            holds ? "representable_uniquely"
                  : (r.verdict == cm::LuoTianVerdict::not_representable
                         ? "not_representable"
                         : "out_of_theorem_scope");
        std::cout << cm::verdict_json(
                         "luo-tian", holds,
                         {{"lhs", r.lhs},
                          {"rhs", r.rhs},
                          {"sum_theta", r.sum_theta},
                          {"angle_lower", r.angle_lower},
                          {"angle_upper", r.angle_upper},
                          {"n", (long long)r.n},
                          {"verdict", verdict}})
                  << "\n";
        return 0;
    }
    if (a.condition == "prescribed-case") {
        if (!in.curvature)
            throw cm::parse_error("condition prescribed-case needs a \"curvature\" summary");
        cm::PrescribedCaseReport r = cm::check_prescribed_case(d, *in.curvature);
        std::cout << cm::verdict_json("prescribed-case", r.hypotheses_met,
                                      {{"case", case_letter(r.which)},
                                       {"chi", r.chi},
                                       {"q", r.q},
                                       {"q_chi", r.q_chi},
                                       {"unique", r.unique},
                                       {"details", r.details}})
                  << "\n";
        return 0;
    }
    if (a.condition == "tang") {
        if (!in.tang)
            throw cm::parse_error("condition tang needs a \"tang\" input object");
        cm::TangVerdict v =
            cm::check_tang_necessary(in.tang->integral_K_dA0, in.tang->beta_leq_alpha);
        std::cout << cm::verdict_json("tang", !v.obstruction,
                                      {{"lhs", in.tang->integral_K_dA0},
                                       {"rhs", 0.0},
                                       {"engaged", in.tang->beta_leq_alpha},
                                       {"message", v.message}})
                  << "\n";
        return 0;
    }
    throw cm::parse_error("unknown condition \"" + a.condition +
                          "\" (known: flat, luo-tian, prescribed-case, tang)");
}

struct ModelArgs {
    std::string input;
    std::string task;
    std::string output;
    std::vector<double> radii{0.5, 1.0, 2.0, 4.0, 8.0};
    double tol = 1e-12;
    bool plot = false;
    bool from_infinity = false;
};

std::string profile_svg(const cm::IsoperimetricProfile& p) {
    const double W = 640, H = 400, mL = 60, mR = 20, mT = 20, mB = 40;
    double rmax = 0, ymax = p.limit;
    for (const auto& s : p.samples) {
        rmax = std::max(rmax, s.r);
        ymax = std::max(ymax, s.ratio);
    }
    if (rmax <= 0) rmax = 1;
    ymax = std::max(ymax * 1.15, 1e-3);
    auto X = [&](double r) { return mL + (W - mL - mR) * r / rmax; };
    auto Y = [&](double y) { return H - mB - (H - mT - mB) * y / ymax; };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    s << "<line x1=\"" << mL << "\" y1=\"" << H - mB << "\" x2=\"" << W - mR << "\" y2=\""
      << H - mB << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << mL << "\" y1=\"" << mT << "\" x2=\"" << mL << "\" y2=\"" << H - mB
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << X(0) << "\" y1=\"" << Y(p.limit) << "\" x2=\"" << X(rmax)
      << "\" y2=\"" << Y(p.limit)
      << "\" stroke=\"crimson\" stroke-dasharray=\"6 4\"/>\n";
    s << "<text x=\"" << W - mR - 4 << "\" y=\"" << Y(p.limit) - 6
      << "\" text-anchor=\"end\" font-size=\"12\" fill=\"crimson\">limit " << p.limit
      << "</text>\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& q : p.samples) s << X(q.r) << "," << Y(q.ratio) << " ";
    s << "\"/>\n";
    for (const auto& q : p.samples)
        s << "<circle cx=\"" << X(q.r) << "\" cy=\"" << Y(q.ratio)
          << "\" r=\"3\" fill=\"steelblue\"/>\n";
    s << "<text x=\"" << (mL + W - mR) / 2 << "\" y=\"" << H - 8
      << "\" text-anchor=\"middle\" font-size=\"12\">r</text>\n";
    s << "<text x=\"14\" y=\"" << (mT + H - mB) / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 14 " << (mT + H - mB) / 2
      << ")\" text-anchor=\"middle\">L^2 / 4 pi A</text>\n";
    s << "</svg>\n";
    return s.str();
}

int run_model(const ModelArgs& a) {
    if (a.task == "defects") {
        cm::PolyhedralSurface mesh = cm::read_polyhedral_surface_file(a.input);
        cm::AngleDefects defects = cm::angle_defects(mesh);
        cm::DiscreteGaussBonnet gb = cm::discrete_gauss_bonnet(mesh);
        std::vector<cm::JsonValue> vertices;
        for (std::size_t i = 0; i < defects.divisor.entries.size(); ++i) {
            const auto& e = defects.divisor.entries[i];
            vertices.push_back(cm::RawJson{cm::json_object({{"label", e.label},
                                                            {"theta", defects.theta[i]},
                                                            {"beta", e.beta}})});
        }
        std::string out = cm::json_object({{"defect_sum", gb.defect_sum},
                                           {"expected", gb.expected},
                                           {"residual", gb.residual},
                                           {"euler", (long long)mesh.euler()},
                                           {"vertices", cm::RawJson{cm::json_array(vertices)}}});
        std::cout << cm::pretty_json(out) << "\n";
        return 0;
    }

    cm::ModelMetric m = cm::parse_model(slurp(a.input));

    if (a.task == "gauss-bonnet") {
        cm::GaussBonnetResult r = cm::gauss_bonnet_total(m);
        std::string out = cm::json_object(
            {{"total_curvature", r.total_curvature},
             {"expected", r.expected},
             {"residual", r.residual},
             {"divisor", cm::RawJson{cm::divisor_json(cm::divisor_of(m))}}});
        std::cout << cm::pretty_json(out) << "\n";
        return 0;
    }
    if (a.task == "isoperimetric") {
        const cm::FlatCone* cone = std::get_if<cm::FlatCone>(&m.v);
        if (!cone)
            throw cm::hypothesis_error("isoperimetric profiles are computed for flat cones");
        cm::IsoperimetricProfile p =
            cm::isoperimetric_profile(*cone, a.radii, a.from_infinity);
        std::ostringstream csv;
        csv << "r,L,A,ratio\n";
        csv.precision(17);
        for (const auto& s : p.samples)
            csv << s.r << "," << s.L << "," << s.A << "," << s.ratio << "\n";
        if (a.output.empty()) {
            std::cout << csv.str();
        } else {
            spill(a.output, csv.str());
            std::cout << cm::json_object({{"csv", a.output},
                                          {"limit", p.limit},
                                          {"constant_in_r", p.constant_in_r}})
                      << "\n";
        }
        if (a.plot) {
            if (a.output.empty())
                throw cm::configuration_error("--plot needs --output to name the SVG");
            spill(a.output + ".svg", profile_svg(p));
        }
        return 0;
    }
    if (a.task == "football-distance") {
        const cm::Football* f = std::get_if<cm::Football>(&m.v);
        if (!f) throw cm::hypothesis_error("football-distance needs a football model");
        double dist = cm::football_geodesic_distance(f->beta, a.tol);
        std::cout << cm::verdict_json("football-distance",
                                      std::abs(dist - cm::pi) < 1e-9,
                                      {{"lhs", dist}, {"rhs", cm::pi}})
                  << "\n";
        return 0;
    }
    throw cm::parse_error("unknown task \"" + a.task +
                          "\" (known: gauss-bonnet, isoperimetric, football-distance, defects)");
}

struct SolveArgs {
    std::string input;
    std::string mode;
    std::string output;
    int grid_n = 256;
    double tau_re = 0.0;
    double tau_im = 1.0;
    double delta = 0.15;
    std::optional<std::uint64_t> seed;
    std::string k_field;
    std::vector<double> k_bump; // inner outer width integral
    std::size_t k_bump_point = 0;
};

int run_solve(const SolveArgs& a) {
    cm::DivisorInput din = cm::parse_divisor_input(slurp(a.input));
    std::vector<cm::JsonField> config{
        {"command", std::string("solve")},
        {"input", a.input},
        {"output", a.output},
        {"mode", a.mode},
        {"grid_n", (long long)a.grid_n},
        {"tau_re", a.tau_re},
        {"tau_im", a.tau_im},
        {"delta", a.delta},
        {"threads", (long long)env_threads()},
    };
    if (a.seed) config.push_back({"seed", (long long)*a.seed});
    if (!a.k_field.empty()) config.push_back({"k_field", a.k_field});

    try {
        cm::TorusDivisor d = din.torus_divisor();
        cm::TorusGrid grid(a.grid_n, {a.tau_re, a.tau_im});

        if (a.mode == "flat-exact") {
            cm::ScalarField w = cm::flat_metric_exact(d, grid);
            if (!a.output.empty()) cm::write_field_file(a.output + ".cmf1", w);
            std::string report = cm::json_object(
                {{"mode", std::string("flat-exact")},
                 {"grid", cm::RawJson{cm::json_object({{"n", (long long)grid.n},
                                                       {"tau_re", grid.tau.real()},
                                                       {"tau_im", grid.tau.imag()}})}},
                 {"w_sup", w.sup_abs()},
                 {"w_mean", w.mean()},
                 {"config", cm::RawJson{cm::json_object(config)}}});
            std::cout << cm::pretty_json(report) << "\n";
            if (!a.output.empty()) spill(a.output + ".json", cm::pretty_json(report) + "\n");
            return 0;
        }

        cm::SolveReport r;
        if (a.mode == "flat") {
            r = cm::flat_metric(d, grid, a.delta);
        } else if (a.mode == "curvature") {
            cm::ScalarField K;
            if (!a.k_field.empty()) {
                if (!a.k_bump.empty())
                    throw cm::configuration_error("--k-field and --k-bump are exclusive");
                K = cm::read_field_file(a.k_field);
            } else if (a.k_bump.size() == 4) {
                cm::BackgroundMetric bg = cm::build_background(d, a.delta, grid);
                K = cm::annulus_bump_curvature(bg, a.k_bump_point, a.k_bump[0], a.k_bump[1],
                                               a.k_bump[2], a.k_bump[3]);
                config.push_back({"k_bump", cm::RawJson{cm::json_array(
                                                {a.k_bump[0], a.k_bump[1], a.k_bump[2],
                                                 a.k_bump[3]})}});
                config.push_back({"k_bump_point", (long long)a.k_bump_point});
            } else {
                throw cm::configuration_error(
                    "mode curvature needs --k-field FILE or --k-bump INNER OUTER WIDTH INTEGRAL");
            }
            std::optional<cm::ScalarField> guess;
            if (a.seed) guess = cm::seeded_initial_guess(grid, *a.seed);
            r = cm::prescribed_curvature_solve(d, K, grid, a.delta,
                                               guess ? &*guess : nullptr);
            r.seed = a.seed;
        } else {
            throw cm::parse_error("unknown mode \"" + a.mode +
                                  "\" (known: flat, flat-exact, curvature)");
        }

        std::string report = cm::solve_report_json(r, config);
        std::cout << report << "\n";
        if (!a.output.empty()) {
            cm::write_field_file(a.output + ".cmf1", r.u);
            spill(a.output + ".json", report + "\n");
        }
        return 0;
    } catch (const cm::hypothesis_error& e) {
        std::cout << cm::verdict_json("solve:" + a.mode, false,
                                      {{"violated", std::string(e.what())}})
                  << "\n";
        return 3;
    }
}

int run_report(const std::string& input) {
    std::ifstream probe(input, std::ios::binary);
    if (!probe) throw cm::parse_error("cannot open input file: " + input);
    char magic[4] = {0, 0, 0, 0};
    probe.read(magic, 4);
    probe.close();
    if (std::string(magic, 4) == "CMF1") {
        cm::ScalarField f = cm::read_field_file(input);
        std::string out = cm::json_object({{"container", std::string("CMF1")},
                                           {"n", (long long)f.grid.n},
                                           {"tau_re", f.grid.tau.real()},
                                           {"tau_im", f.grid.tau.imag()},
                                           {"sup", f.sup_abs()},
                                           {"mean", f.mean()}});
        std::cout << cm::pretty_json(out) << "\n";
        return 0;
    }
    std::cout << cm::pretty_json(slurp(input)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cone metrics on surfaces: checkers, models, and torus solves"};
    app.require_subcommand(1);

    CheckArgs ca;
    CLI::App* check = app.add_subcommand("check", "evaluate a divisor condition");
    check->add_option("--input", ca.input, "divisor or wrapper JSON file")->required();
    check->add_option("--tol", ca.tol,
                      "quantize divisor orders to multiples of this before checking");
    check->add_option("--condition", ca.condition,
                      "flat | luo-tian | prescribed-case | tang")
        ->required();

    ModelArgs ma;
    CLI::App* model = app.add_subcommand("model", "evaluate a closed-form model or mesh");
    model->add_option("--input", ma.input, "model JSON or mesh file")->required();
    model->add_option("--task", ma.task,
                      "gauss-bonnet | isoperimetric | football-distance | defects")
        ->required();
    model->add_option("--output", ma.output, "CSV path for profiles");
    model->add_option("--radii", ma.radii, "profile radii")->delimiter(',');
    model->add_option("--tol", ma.tol, "quadrature tolerance");
    model->add_flag("--plot", ma.plot, "emit an SVG next to the CSV");
    model->add_flag("--from-infinity", ma.from_infinity, "probe the other cone end");

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "solve for a metric on the torus");
    solve->add_option("--input", sa.input, "divisor JSON with \"at\" positions")->required();
    solve->add_option("--mode", sa.mode, "flat | flat-exact | curvature")->required();
    solve->add_option("--output", sa.output, "output path prefix (.json, .cmf1)");
    solve->add_option("--grid-n", sa.grid_n, "grid resolution, power of two");
    solve->add_option("--tau-re", sa.tau_re, "Re tau");
    solve->add_option("--tau-im", sa.tau_im, "Im tau");
    solve->add_option("--delta", sa.delta, "blending radius");
    std::uint64_t seed_val = 0;
    CLI::Option* seed_opt = solve->add_option("--seed", seed_val, "initial-guess seed");
    solve->add_option("--k-field", sa.k_field, "curvature field (CMF1)");
    solve->add_option("--k-bump", sa.k_bump, "INNER OUTER WIDTH INTEGRAL")->expected(4);
    solve->add_option("--k-bump-point", sa.k_bump_point, "divisor point index for the bump");

    std::string report_input;
    CLI::App* report = app.add_subcommand("report", "pretty-print a report or field file");
    report->add_option("--input", report_input, "JSON report or CMF1 file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (seed_opt->count() > 0) sa.seed = seed_val;

    try {
        if (check->parsed()) return run_check(ca);
        if (model->parsed()) return run_model(ma);
        if (solve->parsed()) return run_solve(sa);
        return run_report(report_input);
    } catch (const cm::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cm::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const cm::error& e) {
        std::cerr << "condition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 4;
    }
}
