#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "nilscroll/construct.hpp"
#include "nilscroll/correspondence.hpp"
#include "nilscroll/errors.hpp"
#include "nilscroll/io.hpp"
#include "nilscroll/verify.hpp"

using namespace nilscroll;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDegenerate = 3;

struct JobConfig {
    std::string branch = "beta-half";
    std::string ruling = "circle";
    std::string b = "0";
    std::string alpha = "1";
    std::string k1 = "0";
    std::string S = "0";
    std::string p = "x/8";
    std::string q = "1/y";
    double theta = 3.14159265358979323846 / 3.0;
    std::string span;
    double step = 5e-4;
    std::string grid;
    std::string out;
    std::string format = "csv";
    std::string report;
    std::string junit;
    std::vector<std::string> tol;
    double perturb = 0.0;
    std::string config_path;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (text.empty()) return g;
    double s0, s1, t0, t1;
    int ns, nt;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &s0, &s1, &ns, &t0, &t1, &nt) != 6)
        throw BadInput("--grid expects s0:s1:ns,t0:t1:nt");
    if (ns < 2 || nt < 2 || !(s1 > s0) || !(t1 > t0)) throw BadInput("--grid: bad ranges");
    return {s0, s1, ns, t0, t1, nt};
}

Span parse_span(const std::string& text, Span fallback) {
    if (text.empty()) return fallback;
    double lo, hi;
    if (std::sscanf(text.c_str(), "%lf:%lf", &lo, &hi) != 2)
        throw BadInput("--span expects lo:hi");
    if (!(hi > lo)) throw BadInput("--span: empty span");
    return {lo, hi};
}

// "<number>" or "csv:<path>" (columns s,<name>)
ScalarFn parse_scalar_source(const std::string& text, const std::string& column,
                             std::optional<Span>* span_out = nullptr) {
    if (text.rfind("csv:", 0) == 0) {
        Span sp;
        ScalarFn fn = load_sampled_scalar(text.substr(4), column, &sp);
        if (span_out) *span_out = sp;
        return fn;
    }
    try {
        return constant_fn(std::stod(text));
    } catch (const std::exception&) {
        throw BadInput("expected a number or csv:<path>, got '" + text + "'");
    }
}

Ruling ruling_from_config(const JobConfig& cfg, Span span) {
    if (cfg.ruling == "circle") return make_ruling(builtin_ruling(BuiltinRuling::Circle), span);
    if (cfg.ruling == "hyperbola")
        return make_ruling(builtin_ruling(BuiltinRuling::Hyperbola), span);
    if (cfg.ruling == "parabola")
        return make_ruling(builtin_ruling(BuiltinRuling::Parabola), span);
    if (cfg.ruling.rfind("csv:", 0) == 0) {
        const SampledColumns cols = load_sampled_curve(cfg.ruling.substr(4), "B1", "B2", "B3");
        return make_ruling(splined_frame_curve(cols.s, cols.v), span);
    }
    throw BadInput("unknown --ruling '" + cfg.ruling + "'");
}

struct ChartPreset {
    ScalarFn f, df;
};

ChartPreset p_preset(const std::string& name) {
    if (name == "x/8") return {[](double x) { return x / 8.0; }, constant_fn(1.0 / 8.0)};
    if (name == "tanh/4")
        return {[](double x) { return 0.25 * std::tanh(x); },
                [](double x) { return 0.25 * (1.0 - std::tanh(x) * std::tanh(x)); }};
    throw BadInput("unknown --p preset '" + name + "' (x/8 | tanh/4)");
}

ChartPreset q_preset(const std::string& name) {
    if (name == "1/y")
        return {[](double y) { return 1.0 / y; }, [](double y) { return -1.0 / (y * y); }};
    throw BadInput("unknown --q preset '" + name + "' (1/y)");
}

struct BuiltScroll {
    NullScroll scroll;
    std::optional<NullChart> chart;
    GridSpec default_grid{-1.0, 1.0, 41, -1.0, 1.0, 41};
};

BuiltScroll build_scroll(const JobConfig& cfg) {
    BuiltScroll out;
    ConstructOptions opt;
    opt.step = cfg.step;
    // sampled rulings only carry spline-limited derivatives (second
    // derivatives are O(h_sample^2)); the construction contract cannot hold
    // tighter than that fidelity
    if (cfg.ruling.rfind("csv:", 0) == 0) opt.tol = 1e-4;

    if (cfg.branch == "beta-half") {
        const Span span = parse_span(cfg.span, {-2.0, 2.0});
        Ruling r = normalize_ruling(ruling_from_config(cfg, span), span);
        out.scroll = construct_beta_half(r, parse_scalar_source(cfg.b, "b"), span, opt);
    } else if (cfg.branch == "beta-zero") {
        const Span span = parse_span(cfg.span, {0.25, 2.25});
        ConstantDirectionSpec cd;
        cd.c1 = 1.0;
        cd.c2 = std::cos(cfg.theta);
        cd.c3 = std::sin(cfg.theta);
        cd.k = [](double s) { return 1.0 / s; };
        cd.s_ref = 1.0;
        out.scroll = construct_beta_zero(cd, [](double s) { return 1.0 / s; }, span, opt);
        out.default_grid = {span.lo + 0.05, span.hi - 0.05, 41, -1.0, 1.0, 41};
    } else if (cfg.branch == "tangent") {
        const Span span = parse_span(cfg.span, {0.4, 2.4});
        Ruling r = ruling_from_config(cfg, span);
        out.scroll = construct_tangent(r, parse_scalar_source(cfg.alpha, "alpha"), span,
                                       {0.05, 2.0}, opt);
        out.default_grid = {span.lo, span.hi, 41, 0.1, 1.0, 41};
    } else if (cfg.branch == "curvature") {
        std::optional<Span> k1_span;
        const ScalarFn k1 = parse_scalar_source(cfg.k1, "k1", &k1_span);
        const Span span = parse_span(cfg.span, k1_span.value_or(Span{-2.0, 2.0}));
        out.scroll = construct_from_curvature(k1, span, opt);
        out.chart = chart_section31();
    } else if (cfg.branch == "ar-data") {
        const Span x_span = parse_span(cfg.span, {-2.0, 2.0});
        const ChartPreset pp = p_preset(cfg.p);
        const ChartPreset qq = q_preset(cfg.q);
        const ArDataResult r = construct_from_ar_data(parse_scalar_source(cfg.S, "S"), pp.f,
                                                      pp.df, qq.f, qq.df, x_span, {0.5, 2.0}, opt);
        out.scroll = r.scroll;
        out.chart = r.chart;
        out.default_grid = {out.scroll.span.lo, out.scroll.span.hi, 41, 0.5, 2.0, 41};
    } else {
        throw BadInput("unknown --branch '" + cfg.branch + "'");
    }

    if (cfg.perturb != 0.0) {
        // frequency perturbation of the ruling; keeps it on the light cone
        // but destroys the minimality balance
        const FrameCurve orig = out.scroll.ruling.Btilde;
        const double omega = 1.0 + cfg.perturb;
        FrameCurve warped;
        warped.f = [orig, omega](double s) { return orig.f(omega * s); };
        out.scroll.ruling.Btilde = with_fd_derivatives(warped);
        out.scroll.ruling.beta = compute_beta(out.scroll.ruling.Btilde, out.scroll.span);
        out.scroll.frame.reset();
    }
    return out;
}

Tolerances parse_tolerances(const std::vector<std::string>& entries) {
    Tolerances tol;
    for (const std::string& e : entries) {
        const auto eq = e.find('=');
        if (eq == std::string::npos) throw BadInput("--tol expects name=value");
        tol.by_name(e.substr(0, eq)) = std::stod(e.substr(eq + 1));
    }
    return tol;
}

void apply_config_file(JobConfig& cfg) {
    if (cfg.config_path.empty()) return;
    std::ifstream in(cfg.config_path);
    if (!in) throw BadInput("cannot open --config file: " + cfg.config_path);
    nlohmann::json j;
    in >> j;
    auto set_str = [&j](const char* key, std::string& target) {
        if (j.contains(key)) target = j[key].get<std::string>();
    };
    set_str("branch", cfg.branch);
    set_str("ruling", cfg.ruling);
    set_str("b", cfg.b);
    set_str("alpha", cfg.alpha);
    set_str("k1", cfg.k1);
    set_str("S", cfg.S);
    set_str("p", cfg.p);
    set_str("q", cfg.q);
    set_str("grid", cfg.grid);
    set_str("out", cfg.out);
    set_str("format", cfg.format);
    set_str("report", cfg.report);
    if (j.contains("theta")) cfg.theta = j["theta"].get<double>();
    if (j.contains("step")) cfg.step = j["step"].get<double>();
    if (j.contains("perturb")) cfg.perturb = j["perturb"].get<double>();
    if (j.contains("span")) {
        const auto& s = j["span"];
        cfg.span = std::to_string(s[0].get<double>()) + ":" + std::to_string(s[1].get<double>());
    }
    if (j.contains("tol"))
        for (const auto& [k, v] : j["tol"].items())
            cfg.tol.push_back(k + "=" + std::to_string(v.get<double>()));
}

void add_liouville_stat(VerificationReport& rep, const NullChart& chart, double tol) {
    ResidualStat stat;
    for (double x : {-1.5, -0.5, 0.5, 1.5})
        for (double y : {0.6, 1.0, 1.4, 1.8}) {
            try {
                stat.add(liouville_residual(chart, x, y));
            } catch (const Error&) {
            }
        }
    if (stat.count == 0) return;
    rep.residuals["liouville"] = stat;
    rep.pass["liouville"] = stat.max <= tol;
}

int cmd_construct(const JobConfig& cfg) {
    const BuiltScroll built = build_scroll(cfg);
    const GridSpec grid = cfg.grid.empty() ? built.default_grid : parse_grid(cfg.grid);

    if (!cfg.out.empty()) {
        if (cfg.format == "csv")
            write_mesh_csv(cfg.out, built.scroll.as_map(), grid);
        else if (cfg.format == "obj")
            write_mesh_obj(cfg.out, built.scroll.as_map(), grid);
        else
            throw BadInput("unknown --format '" + cfg.format + "'");
        std::cout << "mesh: " << cfg.out << "\n";
    }

    const Tolerances tol = parse_tolerances(cfg.tol);
    VerificationReport rep = verify_minimal(built.scroll, grid, tol);
    if (built.chart && built.scroll.frame) add_liouville_stat(rep, *built.chart, tol.liouville);
    if (!cfg.report.empty()) {
        write_text(cfg.report, rep.to_json());
        std::cout << "report: " << cfg.report << "\n";
    }
    std::cout << "max |H| (closed form) = " << rep.residuals.at("closed_H").max
              << ", max |H| (fd) = " << rep.residuals.at("fd_H").max << ", masked "
              << rep.mask_fraction * 100.0 << "%\n";
    return 0;
}

int cmd_verify(const JobConfig& cfg) {
    const BuiltScroll built = build_scroll(cfg);
    const GridSpec grid = cfg.grid.empty() ? built.default_grid : parse_grid(cfg.grid);
    const Tolerances tol = parse_tolerances(cfg.tol);

    std::vector<VerificationReport> reports;
    reports.push_back(verify_minimal(built.scroll, grid, tol));
    if (built.chart && built.scroll.frame)
        add_liouville_stat(reports.front(), *built.chart, tol.liouville);

    bool ok = true;
    for (const auto& r : reports) {
        for (const auto& [k, v] : r.pass) {
            std::cout << (v ? "PASS" : "FAIL") << "  " << r.name << "/" << k << "  (max "
                      << r.residuals.at(k).max << ")\n";
            ok = ok && v;
        }
    }
    if (!cfg.report.empty()) write_text(cfg.report, reports.front().to_json());
    if (!cfg.junit.empty()) write_text(cfg.junit, junit_xml(reports));
    return ok ? 0 : kExitVerifyFailed;
}

int cmd_examples(const std::string& name, const std::string& out_dir) {
    const std::string dir = out_dir.empty() ? "meshes" : out_dir;
    std::filesystem::create_directories(dir);

    const std::vector<std::string> all = {"horizontal-umbrella", "vertical-plane", "circle",
                                          "hyperbola", "parabola"};
    std::vector<std::string> selected;
    if (name == "all")
        selected = all;
    else
        selected.push_back(name);

    for (const std::string& n : selected) {
        const GalleryEntry e = example_gallery(n);  // throws UnknownName
        const std::string path = dir + "/" + n + ".obj";
        write_mesh_obj(path, e.scroll.as_map(), e.exact_grid);
        std::cout << "mesh: " << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal null scrolls in the Lorentzian Heisenberg group"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string examples_name = "all";
    std::string examples_out = "meshes";

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--branch", cfg.branch, "beta-zero|beta-half|tangent|curvature|ar-data");
        cmd->add_option("--ruling", cfg.ruling, "circle|hyperbola|parabola|csv:<path>");
        cmd->add_option("--b", cfg.b, "free function of the beta-half branch (const or csv:<path>)");
        cmd->add_option("--alpha", cfg.alpha, "scale function (const or csv:<path>)");
        cmd->add_option("--k1", cfg.k1, "first curvature (const or csv:<path>)");
        cmd->add_option("--S", cfg.S, "AR coefficient of x (const or csv:<path>)");
        cmd->add_option("--p", cfg.p, "chart preset for p(x): x/8 | tanh/4");
        cmd->add_option("--q", cfg.q, "chart preset for q(y): 1/y");
        cmd->add_option("--theta", cfg.theta, "vertical-plane angle");
        cmd->add_option("--span", cfg.span, "parameter span lo:hi");
        cmd->add_option("--step", cfg.step, "integration step");
        cmd->add_option("--grid", cfg.grid, "s0:s1:ns,t0:t1:nt");
        cmd->add_option("--out", cfg.out, "mesh output path");
        cmd->add_option("--format", cfg.format, "obj|csv");
        cmd->add_option("--report", cfg.report, "verification report JSON path");
        cmd->add_option("--junit", cfg.junit, "junit XML path");
        cmd->add_option("--tol", cfg.tol, "tolerance override name=value");
        cmd->add_option("--perturb", cfg.perturb, "ruling frequency perturbation fraction");
        cmd->add_option("--config", cfg.config_path, "construction request JSON");
    };

    CLI::App* construct = app.add_subcommand("construct", "build a scroll, write mesh + report");
    add_common(construct);
    CLI::App* verify = app.add_subcommand("verify", "run the verification suite on a scroll");
    add_common(verify);
    CLI::App* examples = app.add_subcommand("examples", "write the example gallery meshes");
    examples->add_option("name", examples_name, "figure name or 'all'");
    examples->add_option("--out", examples_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(construct)) {
            apply_config_file(cfg);
            return cmd_construct(cfg);
        }
        if (app.got_subcommand(verify)) {
            apply_config_file(cfg);
            return cmd_verify(cfg);
        }
        return cmd_examples(examples_name, examples_out);
    } catch (const ChartInvalid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DegeneratePoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
