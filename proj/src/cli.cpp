#include "nkpolicy/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nkpolicy/csv_io.hpp"
#include "nkpolicy/determinacy.hpp"
#include "nkpolicy/errors.hpp"
#include "nkpolicy/irf.hpp"
#include "nkpolicy/lre.hpp"
#include "nkpolicy/robustness.hpp"
#include "nkpolicy/solvers.hpp"

namespace nkpolicy::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string num2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

IrfMode parse_mode(const std::string& mode) {
    if (mode == "predetermined") return IrfMode::PredeterminedInstrument;
    if (mode == "ramsey") return IrfMode::RamseyQuasiCommitment;
    if (mode == "forward") return IrfMode::ForwardLookingInstrument;
    if (mode == "discretion") return IrfMode::Discretion;
    throw InvalidParams("mode must be one of predetermined|ramsey|forward|discretion");
}

// Config assembly happens in two layers: the JSON file fills a partial
// record, command-line flags override it, and finalize() validates the
// result listing every violation at once.
struct PartialConfig {
    std::optional<double> beta, kappa, rho, sigma_eps, epsilon, q;
    std::optional<double> f_pi, f_z, x0, z0;
    std::optional<int> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::vector<std::string> issues;
};

void read_number(const json& doc, const char* key, std::optional<double>& slot,
                 std::vector<std::string>& issues) {
    if (!doc.contains(key)) {
        return;
    }
    if (!doc[key].is_number()) {
        issues.push_back(std::string(key) + " must be a number");
        return;
    }
    slot = doc[key].get<double>();
}

PartialConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidParams("cannot open config file: " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InvalidParams("config is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) {
        throw InvalidParams("config must be a JSON object");
    }

    PartialConfig pc;
    read_number(doc, "beta", pc.beta, pc.issues);
    read_number(doc, "kappa", pc.kappa, pc.issues);
    read_number(doc, "rho", pc.rho, pc.issues);
    read_number(doc, "sigma_eps", pc.sigma_eps, pc.issues);
    read_number(doc, "epsilon", pc.epsilon, pc.issues);
    read_number(doc, "q", pc.q, pc.issues);
    read_number(doc, "fpi", pc.f_pi, pc.issues);
    read_number(doc, "fz", pc.f_z, pc.issues);
    read_number(doc, "x0", pc.x0, pc.issues);
    read_number(doc, "z0", pc.z0, pc.issues);

    if (doc.contains("horizon")) {
        if (!doc["horizon"].is_number_integer()) {
            pc.issues.push_back("horizon must be an integer");
        } else {
            pc.horizon = doc["horizon"].get<int>();
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            pc.issues.push_back("seed must be a non-negative integer");
        } else {
            pc.seed = doc["seed"].get<std::uint64_t>();
        }
    }
    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) {
            pc.issues.push_back("mode must be a string");
        } else {
            pc.mode = doc["mode"].get<std::string>();
        }
    }
    return pc;
}

RunConfig finalize(const PartialConfig& pc) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    RunConfig rc;
    rc.params.beta = pc.beta.value_or(nan);
    rc.params.kappa = pc.kappa.value_or(nan);
    rc.params.rho = pc.rho.value_or(nan);
    rc.params.sigma_eps = pc.sigma_eps.value_or(1.0);
    rc.params.epsilon = pc.epsilon.value_or(nan);
    rc.params.q = pc.q.value_or(1.0);
    rc.mode = pc.mode.value_or("");
    rc.f_pi = pc.f_pi;
    rc.f_z = pc.f_z;
    rc.x0 = pc.x0;
    rc.z0 = pc.z0;
    rc.horizon = pc.horizon.value_or(40);
    rc.seed = pc.seed;

    std::vector<std::string> bad = pc.issues;
    for (const auto& violation : rc.params.violations()) {
        bad.push_back(violation);
    }
    if (rc.horizon < 1) {
        bad.push_back("horizon must be at least 1");
    }
    if (!rc.mode.empty()) {
        try {
            parse_mode(rc.mode);
        } catch (const Error& e) {
            bad.push_back(e.what());
        }
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        for (std::size_t i = 0; i < bad.size(); ++i) {
            if (i > 0) {
                msg << "; ";
            }
            msg << bad[i];
        }
        throw InvalidParams(msg.str());
    }
    return rc;
}

// CLI override slots shared by the subcommands that take a config.
struct Overrides {
    std::string config_path;
    PartialConfig flags;
    std::string output_path;
};

void add_common_options(CLI::App* cmd, Overrides& ov, bool with_output) {
    cmd->add_option("-c,--config", ov.config_path, "JSON config file");
    auto opt = [&](const char* name, std::optional<double>& slot, const char* help) {
        cmd->add_option(name, [&slot](const std::vector<std::string>& vals) {
               slot = std::stod(vals.front());
               return true;
           }, help)->expected(1);
    };
    opt("--beta", ov.flags.beta, "discount factor, in (0,1)");
    opt("--kappa", ov.flags.kappa, "Phillips-curve slope, > 0");
    opt("--rho", ov.flags.rho, "shock autocorrelation, in (0,1)");
    opt("--sigma-eps", ov.flags.sigma_eps, "shock standard deviation, >= 0");
    opt("--epsilon", ov.flags.epsilon, "elasticity of substitution, > 1");
    opt("--q", ov.flags.q, "commitment probability, in (0,1]");
    opt("--fpi", ov.flags.f_pi, "rule response to inflation");
    opt("--fz", ov.flags.f_z, "rule response to the cost-push shock");
    opt("--x0", ov.flags.x0, "initial instrument value");
    opt("--z0", ov.flags.z0, "initial cost-push shock (default 1)");
    cmd->add_option("--horizon", [&ov](const std::vector<std::string>& vals) {
           ov.flags.horizon = std::stoi(vals.front());
           return true;
       }, "path length (default 40)")->expected(1);
    cmd->add_option("--seed", [&ov](const std::vector<std::string>& vals) {
           ov.flags.seed = static_cast<std::uint64_t>(std::stoull(vals.front()));
           return true;
       }, "RNG seed; presence switches irf to stochastic simulation")->expected(1);
    cmd->add_option("--mode", [&ov](const std::vector<std::string>& vals) {
           ov.flags.mode = vals.front();
           return true;
       }, "predetermined|ramsey|forward|discretion")->expected(1);
    if (with_output) {
        cmd->add_option("-o,--output", ov.output_path, "output file path");
    }
}

PartialConfig merged(const Overrides& ov) {
    PartialConfig pc;
    if (!ov.config_path.empty()) {
        pc = parse_config_file(ov.config_path);
    }
    const PartialConfig& f = ov.flags;
    if (f.beta) pc.beta = f.beta;
    if (f.kappa) pc.kappa = f.kappa;
    if (f.rho) pc.rho = f.rho;
    if (f.sigma_eps) pc.sigma_eps = f.sigma_eps;
    if (f.epsilon) pc.epsilon = f.epsilon;
    if (f.q) pc.q = f.q;
    if (f.f_pi) pc.f_pi = f.f_pi;
    if (f.f_z) pc.f_z = f.f_z;
    if (f.x0) pc.x0 = f.x0;
    if (f.z0) pc.z0 = f.z0;
    if (f.horizon) pc.horizon = f.horizon;
    if (f.seed) pc.seed = f.seed;
    if (f.mode) pc.mode = f.mode;
    return pc;
}

RunConfig require_mode(const Overrides& ov) {
    RunConfig rc = finalize(merged(ov));
    if (rc.mode.empty()) {
        throw InvalidParams("mode is required (predetermined|ramsey|forward|discretion)");
    }
    rc.output_path = ov.output_path;
    return rc;
}

PolicyRule simple_rule_from(const RunConfig& rc, InstrumentConvention convention) {
    if (!rc.f_pi) {
        throw InvalidParams("this mode needs fpi");
    }
    PolicyRule rule{*rc.f_pi, rc.f_z.value_or(0.0), convention};
    rule.validate();
    return rule;
}

struct SolutionRecord {
    double lambda = 0.0;
    PolicyRule rule;
    double x0 = 0.0;
    double pi0 = 0.0;
    std::optional<double> g;
    DeterminacyClass determinacy = DeterminacyClass::Determinate;
};

SolutionRecord solve_record(const RunConfig& rc) {
    const ModelParams& p = rc.params;
    const double z0 = rc.z0.value_or(1.0);
    const IrfMode mode = parse_mode(rc.mode);

    SolutionRecord rec;
    switch (mode) {
        case IrfMode::RamseyQuasiCommitment: {
            const RamseySolution sol = ramsey_rule(p);
            rec.lambda = sol.lambda;
            rec.rule = sol.rule();
            rec.x0 = sol.x0_star * z0;
            rec.pi0 = sol.pi0 * z0;
            break;
        }
        case IrfMode::Discretion: {
            const DiscretionSolution sol = discretion_solution(p);
            rec.lambda = closed_loop_inflation_eigenvalue(p, sol.rule.f_pi);
            rec.rule = sol.rule;
            rec.g = sol.projection.g;
            rec.pi0 = sol.projection.g * z0;
            rec.x0 = sol.projection.x_coefficient * z0;
            break;
        }
        case IrfMode::ForwardLookingInstrument: {
            const PolicyRule rule = simple_rule_from(rc, InstrumentConvention::ForwardLooking);
            const StableProjection proj = forward_projection(p, rule.f_pi);
            rec.lambda = closed_loop_inflation_eigenvalue(p, rule.f_pi);
            rec.rule = rule;
            rec.g = proj.g;
            rec.pi0 = proj.g * z0;
            rec.x0 = proj.x_coefficient * z0;
            break;
        }
        case IrfMode::PredeterminedInstrument: {
            const PolicyRule rule = simple_rule_from(rc, InstrumentConvention::Predetermined);
            if (!rc.x0) {
                throw InvalidParams("predetermined mode needs x0");
            }
            rec.lambda = closed_loop_inflation_eigenvalue(p, rule.f_pi);
            rec.rule = rule;
            rec.x0 = *rc.x0;
            rec.pi0 = anchor_inflation(rule, *rc.x0, z0);
            break;
        }
    }
    rec.determinacy = classify_bk(eigenvalues(close_loop(p, rec.rule).base),
                                  rec.rule.convention == InstrumentConvention::ForwardLooking
                                      ? 1
                                      : 0);
    return rec;
}

json record_to_json(const RunConfig& rc, const SolutionRecord& rec) {
    json doc;
    doc["beta"] = rc.params.beta;
    doc["kappa"] = rc.params.kappa;
    doc["rho"] = rc.params.rho;
    doc["sigma_eps"] = rc.params.sigma_eps;
    doc["epsilon"] = rc.params.epsilon;
    doc["q"] = rc.params.q;
    doc["mode"] = rc.mode;
    doc["fpi"] = rec.rule.f_pi;
    doc["fz"] = rec.rule.f_z;
    doc["x0"] = rec.x0;
    doc["z0"] = rc.z0.value_or(1.0);
    doc["horizon"] = rc.horizon;
    if (rc.seed) {
        doc["seed"] = *rc.seed;
    }
    return doc;
}

int cmd_solve(const Overrides& ov) {
    const RunConfig rc = require_mode(ov);
    const SolutionRecord rec = solve_record(rc);

    std::cout << "mode: " << rc.mode << '\n';
    std::cout << "lambda: " << num(rec.lambda) << '\n';
    std::cout << "f_pi: " << num(rec.rule.f_pi) << '\n';
    std::cout << "f_z: " << num(rec.rule.f_z) << '\n';
    std::cout << "x0: " << num(rec.x0) << '\n';
    std::cout << "pi0: " << num(rec.pi0) << '\n';
    if (rec.g) {
        std::cout << "g: " << num(*rec.g) << '\n';
    }
    std::cout << "determinacy: " << to_string(rec.determinacy) << '\n';

    if (!rc.output_path.empty()) {
        write_file(rc.output_path, record_to_json(rc, rec).dump(2) + "\n");
    }
    return 0;
}

int cmd_irf(const Overrides& ov) {
    const RunConfig rc = require_mode(ov);
    if (rc.output_path.empty()) {
        throw InvalidParams("irf needs an output path (-o)");
    }
    const IrfMode mode = parse_mode(rc.mode);
    const double z0 = rc.z0.value_or(1.0);

    std::optional<PolicyRule> rule;
    if (mode == IrfMode::PredeterminedInstrument) {
        rule = simple_rule_from(rc, InstrumentConvention::Predetermined);
    } else if (mode == IrfMode::ForwardLookingInstrument) {
        rule = simple_rule_from(rc, InstrumentConvention::ForwardLooking);
    }

    const IRFPath path =
        rc.seed ? simulate(rc.params, mode, rule, z0, rc.x0, rc.horizon, *rc.seed)
                : expected_irf(rc.params, mode, rule, z0, rc.x0, rc.horizon);
    write_file(rc.output_path, format_irf_csv(path));
    std::cout << "wrote " << rc.output_path << " (" << path.horizon << " periods, "
              << (rc.seed ? "simulated" : "expected") << ")\n";
    return 0;
}

int cmd_sweep(const Overrides& ov, const std::string& axis_name, double from, double to,
              int steps) {
    const RunConfig rc = require_mode(ov);
    if (rc.output_path.empty()) {
        throw InvalidParams("sweep needs an output path (-o)");
    }

    SweepAxis axis;
    if (axis_name == "f_pi" || axis_name == "fpi") axis = SweepAxis::FPi;
    else if (axis_name == "beta") axis = SweepAxis::Beta;
    else if (axis_name == "kappa") axis = SweepAxis::Kappa;
    else if (axis_name == "rho") axis = SweepAxis::Rho;
    else if (axis_name == "q") axis = SweepAxis::Q;
    else if (axis_name == "epsilon") axis = SweepAxis::Epsilon;
    else throw InvalidParams("axis must be one of f_pi|beta|kappa|rho|q|epsilon");

    const IrfMode mode = parse_mode(rc.mode);
    SweepMode sweep_mode = SweepMode::SimpleRule;
    std::optional<double> f_pi = rc.f_pi;
    if (mode == IrfMode::RamseyQuasiCommitment) {
        sweep_mode = SweepMode::Ramsey;
    } else if (mode == IrfMode::Discretion && !f_pi) {
        f_pi = -rc.params.epsilon;
    }

    const auto rows = sweep(rc.params, axis, from, to, steps, sweep_mode, f_pi);
    write_file(rc.output_path, format_sweep_csv(axis, rows));
    std::cout << "wrote " << rc.output_path << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_classify(const Overrides& ov) {
    RunConfig rc = finalize(merged(ov));
    if (!rc.f_pi) {
        throw InvalidParams("classify needs fpi");
    }
    const ModelParams& p = rc.params;
    const double f_pi = *rc.f_pi;

    const FeedbackInterval interval = negative_feedback_interval(p);
    const BifurcationVerdict lower = bifurcation_at(p, BoundarySide::Lower);
    const BifurcationVerdict upper = bifurcation_at(p, BoundarySide::Upper);

    std::cout << "f_pi: " << num(f_pi) << '\n';
    std::cout << "lambda_sr: " << num(closed_loop_inflation_eigenvalue(p, f_pi)) << '\n';
    std::cout << "classification: " << to_string(classify_feedback(p, f_pi)) << '\n';
    std::cout << "negative_feedback_interval: (" << num(interval.lower) << ", "
              << num(interval.upper) << ")\n";
    std::cout << "lower_boundary: " << to_string(lower.type) << " at " << num(lower.boundary)
              << " (eigenvalue " << (lower.crossing_eigenvalue > 0 ? "+1" : "-1") << ")\n";
    std::cout << "upper_boundary: " << to_string(upper.type) << " at " << num(upper.boundary)
              << " (eigenvalue " << (upper.crossing_eigenvalue > 0 ? "+1" : "-1") << ")\n";
    return 0;
}

int cmd_stress(const Overrides& ov, const StressSettings& base_settings) {
    const RunConfig rc = require_mode(ov);
    if (rc.output_path.empty()) {
        throw InvalidParams("stress needs an output path (-o)");
    }
    const IrfMode mode = parse_mode(rc.mode);
    const double z0 = rc.z0.value_or(1.0);

    std::optional<PolicyRule> rule;
    if (mode == IrfMode::PredeterminedInstrument) {
        rule = simple_rule_from(rc, InstrumentConvention::Predetermined);
    } else if (mode == IrfMode::ForwardLookingInstrument) {
        rule = simple_rule_from(rc, InstrumentConvention::ForwardLooking);
    }

    StressSettings settings = base_settings;
    settings.horizon = rc.horizon;

    const MisspecReport report =
        misspecification_stress(rc.params, mode, rule, rc.x0, z0, settings);
    write_file(rc.output_path, format_stress_csv(report));
    std::cout << "wrote " << rc.output_path << " (" << report.points.size() << " grid points)\n";
    std::cout << "regime: " << to_string(report.regime) << '\n';
    std::cout << "stable_fraction: " << num(report.stable_fraction) << '\n';
    return 0;
}

// Built-in reproduction of the worked numerical example
// (rho=0.8, beta=0.99, epsilon=6, kappa=0.1275, q=1), checked to 2 decimals.
int cmd_table2() {
    ModelParams p;
    p.beta = 0.99;
    p.kappa = 0.1275;
    p.rho = 0.8;
    p.sigma_eps = 1.0;
    p.epsilon = 6.0;
    p.q = 1.0;

    int failures = 0;
    auto check = [&](const char* name, double computed, double expected, double tol = 0.005) {
        const bool ok = std::abs(computed - expected) < tol;
        if (!ok) {
            ++failures;
        }
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << ": computed " << num2(computed)
                  << " expected " << num2(expected) << '\n';
    };

    std::cout << "numerical example (rho=0.8, beta=0.99, epsilon=6, kappa=0.1275, q=1)\n";

    const RamseySolution sol = ramsey_rule(p);
    const ClosedLoopSystem commitment_loop = close_loop(p, sol.rule());
    check("commitment inflation eigenvalue", sol.lambda, 0.43);
    check("commitment rule f_pi", sol.f_pi_star, 4.51, 0.01);
    check("closed-loop transition (0,0)", commitment_loop.base.transition(0, 0), 0.43);
    check("closed-loop transition (0,1)", commitment_loop.base.transition(0, 1), -0.13);
    check("closed-loop transition (1,0)", commitment_loop.base.transition(1, 0), 0.0);
    check("closed-loop transition (1,1)", commitment_loop.base.transition(1, 1), 0.80);
    check("commitment initial vector pi0", sol.pi0, 0.65);
    check("commitment initial vector z0", 1.0, 1.0);

    const DiscretionSolution disc = discretion_solution(p);
    const ClosedLoopSystem forward_loop = close_loop(p, disc.rule);
    check("forward closed-loop root", closed_loop_inflation_eigenvalue(p, disc.rule.f_pi), 1.78);
    check("forward transition (0,1)", forward_loop.base.transition(0, 1), -1.01);
    check("forward initial vector pi0", disc.projection.g, 1.03);
    check("forward initial vector z0", 1.0, 1.0);

    const bool f_pi_exact = disc.rule.f_pi == -6.0;
    if (!f_pi_exact) {
        ++failures;
    }
    std::cout << (f_pi_exact ? "[ok]   " : "[FAIL] ")
              << "discretion rule f_pi: computed " << num2(disc.rule.f_pi)
              << " expected -6.00 (exact)\n";

    // Both forward-looking rows of the example share this configuration; the
    // membership label differs between them only by a typographical slip.
    const FeedbackInterval d_nf = negative_feedback_interval(p);
    const bool in_positive_set = !d_nf.contains(disc.rule.f_pi);
    if (!in_positive_set) {
        ++failures;
    }
    std::cout << (in_positive_set ? "[ok]   " : "[FAIL] ")
              << "discretion rule lies outside the negative-feedback interval\n";

    if (failures == 0) {
        std::cout << "all rows reproduced\n";
        return 0;
    }
    std::cout << failures << " row(s) failed\n";
    return 2;
}

} // namespace

RunConfig load_config(const std::string& path) {
    return finalize(parse_config_file(path));
}

int run(int argc, const char* const* argv) {
    CLI::App app{"monetary-policy rules on the new-Keynesian Phillips curve: solvers, "
                 "determinacy maps, impulse responses, robustness stress tests"};
    app.require_subcommand(1);

    Overrides ov_solve, ov_irf, ov_sweep, ov_classify, ov_stress;
    std::string sweep_axis = "f_pi";
    double sweep_from = 0.0;
    double sweep_to = 1.0;
    int sweep_steps = 101;
    StressSettings stress_settings;

    CLI::App* solve = app.add_subcommand("solve", "print the solution record for a mode");
    add_common_options(solve, ov_solve, true);

    CLI::App* irf = app.add_subcommand("irf", "write an impulse-response CSV");
    add_common_options(irf, ov_irf, true);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "classify a parameter grid into a CSV");
    add_common_options(sweep_cmd, ov_sweep, true);
    sweep_cmd->add_option("--axis", sweep_axis, "f_pi|beta|kappa|rho|q|epsilon");
    sweep_cmd->add_option("--from", sweep_from, "grid start")->required();
    sweep_cmd->add_option("--to", sweep_to, "grid end")->required();
    sweep_cmd->add_option("--steps", sweep_steps, "grid points (>= 2)");

    CLI::App* classify = app.add_subcommand("classify", "feedback and bifurcation classification");
    add_common_options(classify, ov_classify, false);

    CLI::App* stress = app.add_subcommand("stress", "misspecification stress grid into a CSV");
    add_common_options(stress, ov_stress, true);
    stress->add_option("--radius", stress_settings.grid_radius, "perturbation half-width");
    stress->add_option("--grid-steps", stress_settings.grid_steps, "points per axis");
    stress->add_option("--threshold", stress_settings.threshold, "divergence multiplier");

    CLI::App* table2 = app.add_subcommand("table2", "reproduce the built-in numerical example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "nkpolicy: invalid-params: " << e.what() << '\n';
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(ov_solve);
        if (irf->parsed()) return cmd_irf(ov_irf);
        if (sweep_cmd->parsed()) return cmd_sweep(ov_sweep, sweep_axis, sweep_from, sweep_to,
                                                  sweep_steps);
        if (classify->parsed()) return cmd_classify(ov_classify);
        if (stress->parsed()) return cmd_stress(ov_stress, stress_settings);
        if (table2->parsed()) return cmd_table2();
    } catch (const InternalError& e) {
        std::cerr << "nkpolicy: " << e.code() << ": " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "nkpolicy: " << e.code() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "nkpolicy: internal-error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace nkpolicy::cli
