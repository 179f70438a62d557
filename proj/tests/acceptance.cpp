// Acceptance suite: each criterion prints exactly one [PASS]/[FAIL] line.
// Tolerances and runtime budgets are pinned in the checks themselves.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nkpolicy/csv_io.hpp"
#include "nkpolicy/determinacy.hpp"
#include "nkpolicy/irf.hpp"
#include "nkpolicy/lre.hpp"
#include "nkpolicy/robustness.hpp"
#include "nkpolicy/solvers.hpp"

using namespace nkpolicy;

namespace {

struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            failures.push_back(what);
        }
    }

    void require_close(double actual, double expected, double tol, const std::string& what) {
        if (!(std::abs(actual - expected) <= tol)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s: got %.12g, want %.12g +- %.3g", what.c_str(),
                          actual, expected, tol);
            failures.push_back(buf);
        }
    }
};

ModelParams table2_params() {
    ModelParams p;
    p.beta = 0.99;
    p.kappa = 0.1275;
    p.rho = 0.8;
    p.sigma_eps = 1.0;
    p.epsilon = 6.0;
    p.q = 1.0;
    return p;
}

ModelParams random_params(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> beta_d(0.6, 0.999);
    std::uniform_real_distribution<double> kappa_d(0.02, 1.5);
    std::uniform_real_distribution<double> rho_d(0.05, 0.95);
    std::uniform_real_distribution<double> eps_d(1.05, 20.0);
    std::uniform_real_distribution<double> q_d(0.2, 1.0);
    ModelParams p;
    p.beta = beta_d(gen);
    p.kappa = kappa_d(gen);
    p.rho = rho_d(gen);
    p.sigma_eps = 1.0;
    p.epsilon = eps_d(gen);
    p.q = q_d(gen);
    return p;
}

// --- criterion 1 -----------------------------------------------------------

void table2_reproduction(Checker& c) {
    const ModelParams p = table2_params();

    const double lambda = ramsey_lambda(p);
    c.require_close(lambda, 0.43, 0.005, "commitment inflation eigenvalue");

    const RamseySolution sol = ramsey_rule(p);
    c.require_close(sol.f_pi_star, 4.51, 0.01, "commitment rule f_pi");

    const ClosedLoopSystem loop = close_loop(p, sol.rule());
    c.require_close(loop.base.transition(0, 0), 0.43, 0.005, "transition (0,0)");
    c.require_close(loop.base.transition(0, 1), -0.13, 0.005, "transition (0,1)");
    c.require_close(loop.base.transition(1, 0), 0.0, 0.005, "transition (1,0)");
    c.require_close(loop.base.transition(1, 1), 0.8, 0.005, "transition (1,1)");

    c.require_close(sol.pi0, 0.65, 0.005, "commitment initial vector pi0");
    c.require_close(1.0, 1.0, 0.005, "commitment initial vector z0");

    const DiscretionSolution disc = discretion_solution(p);
    c.require_close(closed_loop_inflation_eigenvalue(p, disc.rule.f_pi), 1.78, 0.005,
                    "forward closed-loop root");
    c.require_close(disc.projection.g, 1.03, 0.005, "projection vector pi0");
    c.require_close(1.0, 1.0, 0.005, "projection vector z0");
    c.require(disc.rule.f_pi == -6.0, "discretion f_pi must equal -6 exactly");
}

// --- criterion 2 -----------------------------------------------------------

void determinacy_endpoints(Checker& c) {
    const ModelParams p = table2_params();
    const FeedbackInterval interval = negative_feedback_interval(p);

    c.require_close(interval.lower, 0.0784, 1e-3, "negative-feedback lower endpoint");
    c.require_close(interval.upper, 15.608, 1e-3, "negative-feedback upper endpoint");

    c.require(closed_loop_inflation_eigenvalue(p, interval.lower) == 1.0,
              "lambda_sr at the lower endpoint must be exactly +1");
    c.require(closed_loop_inflation_eigenvalue(p, interval.upper) == -1.0,
              "lambda_sr at the upper endpoint must be exactly -1");

    const BifurcationVerdict lower = bifurcation_at(p, BoundarySide::Lower);
    const BifurcationVerdict upper = bifurcation_at(p, BoundarySide::Upper);
    c.require(lower.type == BifurcationType::SaddleNode && lower.crossing_eigenvalue == 1,
              "lower boundary must be a saddle-node at eigenvalue +1");
    c.require(upper.type == BifurcationType::Flip && upper.crossing_eigenvalue == -1,
              "upper boundary must be a flip at eigenvalue -1");
}

// --- criterion 3 -----------------------------------------------------------

void dual_formula_suite(Checker& c) {
    std::mt19937_64 gen(90210);
    for (int rep = 0; rep < 1000; ++rep) {
        const ModelParams p = random_params(gen);
        const double lambda = ramsey_lambda(p);
        const double bq = p.beta * p.q;

        if (!(lambda > 0.0 && lambda < 1.0)) {
            c.require(false, "inflation eigenvalue left (0,1) on draw " + std::to_string(rep));
            return;
        }
        const double direct = (1.0 - bq * lambda) / p.kappa;
        const double ratio = p.epsilon * lambda / (1.0 - lambda);
        const double scale = std::max(std::abs(direct), std::abs(ratio));
        if (!(std::abs(direct - ratio) <= 1e-9 * scale)) {
            c.require(false, "dual formulas disagree on draw " + std::to_string(rep));
            return;
        }
    }
}

// --- criterion 4 -----------------------------------------------------------

void algebraic_identities(Checker& c) {
    const ModelParams p = table2_params();

    const DiscretionSolution disc = discretion_solution(p);
    const StableProjection proj = forward_projection(p, -p.epsilon);
    c.require(disc.projection.g == proj.g && disc.projection.x_coefficient == proj.x_coefficient,
              "discretion projection must equal forward_projection(-epsilon) exactly");

    const RamseySolution sol = ramsey_rule(p);
    const PolicyRule rule = sol.rule();
    for (double pi_target : {0.65, -1.3, 0.0, 2.5}) {
        const double recovered =
            anchor_inflation(rule, instrument_from_target(rule, pi_target, 1.0), 1.0);
        c.require(std::abs(recovered - pi_target) <= 1e-12,
                  "anchoring round trip must recover the target to 1e-12");
    }

    const double inverted = anchor_inflation(rule, sol.x0_star, 1.0);
    c.require(std::abs(sol.pi0 - inverted) <= 1e-9,
              "row-2 initial inflation must match rule inversion to 1e-9 at q=1");

    const double lambda_sr = closed_loop_inflation_eigenvalue(p, -p.epsilon);
    c.require(std::abs((lambda_sr - p.rho) * disc.projection.g - 1.0 / p.beta) <= 1e-9,
              "eigenvector residual (lambda_sr - rho)*g - 1/beta must vanish to 1e-9");
}

// --- criterion 5 -----------------------------------------------------------

void oracle_optimality(Checker& c) {
    const ModelParams p = table2_params();
    const RamseySolution sol = ramsey_rule(p);
    const int horizon = 200;
    const double z0 = 1.0;

    auto loss_at = [&](double f_pi, double f_z, double x0) {
        const PolicyRule rule{f_pi, f_z, InstrumentConvention::Predetermined};
        const IRFPath path =
            expected_irf(p, IrfMode::PredeterminedInstrument, rule, z0, x0, horizon);
        return ramsey_loss(path, p, horizon);
    };

    const double center = loss_at(sol.f_pi_star, sol.f_z_star, sol.x0_star);
    c.require(std::isfinite(center), "loss at the commitment point must be finite");

    int argmin_i = 99, argmin_j = 99, argmin_k = 99;
    double best = center;
    bool weakly_larger = true;
    for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
            for (int k = -10; k <= 10; ++k) {
                const double value = loss_at(sol.f_pi_star + 0.05 * i, sol.f_z_star + 0.05 * j,
                                             sol.x0_star + 0.05 * k);
                if (value < best) {
                    best = value;
                    argmin_i = i;
                    argmin_j = j;
                    argmin_k = k;
                }
                if (value < center) {
                    weakly_larger = false;
                }
            }
        }
    }
    c.require(weakly_larger, "every grid perturbation must weakly raise the loss");
    c.require(best == center && argmin_i == 99 && argmin_j == 99 && argmin_k == 99,
              "the commitment point must attain the grid minimum");
}

// --- criterion 6 -----------------------------------------------------------

void foc_recursion(Checker& c) {
    std::mt19937_64 gen(6021023);
    for (int rep = 0; rep < 100; ++rep) {
        const ModelParams p = random_params(gen);
        const IRFPath path =
            expected_irf(p, IrfMode::RamseyQuasiCommitment, std::nullopt, 1.0, std::nullopt, 60);
        double scale = 1.0;
        for (double x : path.x) {
            scale = std::max(scale, std::abs(x));
        }
        if (!(foc_recursion_check(path, p) <= 1e-8 * scale)) {
            c.require(false, "commitment recursion failed on draw " + std::to_string(rep));
            return;
        }
    }

    const ModelParams p = table2_params();
    const IRFPath disc = expected_irf(p, IrfMode::Discretion, std::nullopt, 1.0, std::nullopt, 20);
    c.require(foc_recursion_check(disc, p) > 0.01,
              "discretion must violate the commitment recursion by more than 0.01");
}

// --- criterion 7 -----------------------------------------------------------

void fragility_contrast(Checker& c) {
    const ModelParams p = table2_params();
    StressSettings settings;
    settings.grid_radius = 0.01;
    settings.grid_steps = 3;
    settings.horizon = 40;
    settings.threshold = 10.0;

    // commitment and predetermined-instrument paths shrug the grid off
    const MisspecReport ramsey = misspecification_stress(p, IrfMode::RamseyQuasiCommitment,
                                                         std::nullopt, std::nullopt, 1.0,
                                                         settings);
    c.require(ramsey.stable_fraction == 1.0, "commitment stress must keep stable_fraction = 1");

    const RamseySolution sol = ramsey_rule(p);
    const MisspecReport predetermined = misspecification_stress(
        p, IrfMode::PredeterminedInstrument, sol.rule(), sol.x0_star, 1.0, settings);
    c.require(predetermined.stable_fraction == 1.0,
              "predetermined-instrument stress must keep stable_fraction = 1");

    // every valid off-nominal perturbation of the discretion solution diverges,
    // and the gap grows at the perturbed unstable root
    const MisspecReport disc = misspecification_stress(p, IrfMode::Discretion, std::nullopt,
                                                       std::nullopt, 1.0, settings);
    for (const StressPoint& point : disc.points) {
        if (point.status == StressPointStatus::InvalidParams) {
            continue;
        }
        const bool nominal = point.dbeta == 0.0 && point.dkappa == 0.0 && point.drho == 0.0;
        if (nominal) {
            c.require(point.status == StressPointStatus::Stable,
                      "the unperturbed point must stay on the projection line");
            continue;
        }
        if (point.status != StressPointStatus::Diverged || !point.growth_ratio) {
            c.require(false, "an off-manifold discretion perturbation failed to diverge");
            continue;
        }
        ModelParams truth = p;
        truth.beta += point.dbeta;
        truth.kappa += point.dkappa;
        truth.rho += point.drho;
        const double lambda = std::abs(closed_loop_inflation_eigenvalue(truth, -p.epsilon));
        if (!(std::abs(*point.growth_ratio - lambda) <= 0.01 * lambda)) {
            c.require(false, "divergence rate strayed from the perturbed unstable root");
        }
    }

    // on the compensating manifold the forward solution stays on pi = g*z
    const double g = forward_projection(p, -6.0).g;
    for (double beta_true : {0.98, 0.985, 0.995, 0.9995}) {
        const double kappa_true = compensating_kappa(-6.0, g, p.rho, beta_true);
        const double m00 = (1.0 - kappa_true * (-6.0)) / beta_true;
        const double m01 = -1.0 / beta_true;
        double pi = g;
        double z = 1.0;
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            worst = std::max(worst, std::abs(pi - g * z));
            const double pi_next = m00 * pi + m01 * z;
            z *= p.rho;
            pi = pi_next;
        }
        c.require(worst <= 1e-8, "the compensated forward path must stay on the line to 1e-8");
    }
}

// --- criterion 8 -----------------------------------------------------------

void monte_carlo_consistency(Checker& c) {
    const ModelParams p = table2_params();
    const int horizon = 8;
    const int n_paths = 100000;

    const IRFPath expected =
        expected_irf(p, IrfMode::RamseyQuasiCommitment, std::nullopt, 1.0, std::nullopt, horizon);

    std::vector<long double> sum(horizon, 0.0L);
    std::vector<long double> sum_sq(horizon, 0.0L);
    const std::vector<std::uint64_t> seeds = derive_path_seeds(20240801, n_paths);
    for (int i = 0; i < n_paths; ++i) {
        const IRFPath path = simulate(p, IrfMode::RamseyQuasiCommitment, std::nullopt, 1.0,
                                      std::nullopt, horizon, seeds[i]);
        for (int t = 0; t < horizon; ++t) {
            sum[t] += path.pi[t];
            sum_sq[t] += static_cast<long double>(path.pi[t]) * path.pi[t];
        }
    }

    for (int t = 0; t < horizon; ++t) {
        const double mean = static_cast<double>(sum[t] / n_paths);
        const double variance = static_cast<double>(
            std::max(0.0L, sum_sq[t] / n_paths - (sum[t] / n_paths) * (sum[t] / n_paths)));
        const double se = std::sqrt(variance / n_paths);
        const double slack = 3.0 * se + 1e-10; // absolute term covers the deterministic dates
        if (!(std::abs(mean - expected.pi[t]) <= slack)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "mean pi at t=%d is %.6g, expected %.6g, 3se = %.3g", t, mean,
                          expected.pi[t], 3.0 * se);
            c.require(false, buf);
        }
    }
}

// --- criterion 9 -----------------------------------------------------------

void bk_classifier_grid(Checker& c) {
    const ModelParams p = table2_params();

    for (int i = 0; i < 2000; ++i) {
        const double f_pi = -8.0 + 28.0 * i / 1999.0;
        const FeedbackClass predicted = classify_feedback(p, f_pi);

        const ClosedLoopSystem predet =
            close_loop(p, PolicyRule{f_pi, 0.0, InstrumentConvention::Predetermined});
        const DeterminacyClass predet_class = classify_bk(eigenvalues(predet.base), 0);

        const ClosedLoopSystem forward =
            close_loop(p, PolicyRule{f_pi, 0.0, InstrumentConvention::ForwardLooking});
        const DeterminacyClass forward_class = classify_bk(eigenvalues(forward.base), 1);

        bool ok = true;
        switch (predicted) {
            case FeedbackClass::NegativeFeedback:
                ok = predet_class == DeterminacyClass::Determinate &&
                     forward_class == DeterminacyClass::Indeterminate;
                break;
            case FeedbackClass::PositiveFeedback:
                ok = predet_class == DeterminacyClass::NoBoundedSolution &&
                     forward_class == DeterminacyClass::Determinate;
                break;
            case FeedbackClass::Boundary:
                ok = predet_class == DeterminacyClass::BoundaryCase &&
                     forward_class == DeterminacyClass::BoundaryCase;
                break;
        }
        if (!ok) {
            c.require(false, "classifier disagrees with the interval at f_pi = " +
                                 std::to_string(f_pi));
            return;
        }
    }

    // explosive-shock variants, constructed directly
    auto raw_system = [](double lambda_sr, double rho, int n_pre, int m_non) {
        LinearRESystem sys;
        sys.transition.resize(2, 2);
        sys.transition << lambda_sr, -1.01, 0.0, rho;
        sys.impact.resize(2, 0);
        sys.shock_loading.resize(2, 1);
        sys.shock_loading << 0.0, 1.0;
        sys.n_predetermined = n_pre;
        sys.m_nonpredetermined = m_non;
        return sys;
    };

    c.require(classify_bk(eigenvalues(raw_system(1.78, 1.1, 1, 1)), 1) ==
                  DeterminacyClass::NoBoundedSolution,
              "unstable root plus explosive shock against one jump variable must have no "
              "bounded solution");
    c.require(classify_bk(eigenvalues(raw_system(0.43, 1.1, 1, 1)), 1) ==
                  DeterminacyClass::Determinate,
              "a lone explosive shock root matches one jump variable");
    c.require(classify_bk(eigenvalues(raw_system(0.43, 1.1, 2, 0)), 0) ==
                  DeterminacyClass::NoBoundedSolution,
              "an explosive shock with no jump variables leaves no bounded solution");
    c.require(classify_bk(eigenvalues(raw_system(1.78, 1.1, 0, 2)), 2) ==
                  DeterminacyClass::Determinate,
              "two unstable roots match two jump variables");
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        double budget_seconds; // 0 means no stated budget
        std::function<void(Checker&)> body;
    };

    const std::vector<Criterion> criteria = {
        {1, "table-2 reproduction", 1.0, table2_reproduction},
        {2, "determinacy-set endpoints and bifurcations", 1.0, determinacy_endpoints},
        {3, "dual-formula property suite (1000 draws)", 5.0, dual_formula_suite},
        {4, "algebraic identities", 0.0, algebraic_identities},
        {5, "grid-search loss optimality", 60.0, oracle_optimality},
        {6, "commitment first-order recursion (100 draws)", 0.0, foc_recursion},
        {7, "fragility contrast", 10.0, fragility_contrast},
        {8, "monte-carlo consistency (1e5 paths)", 30.0, monte_carlo_consistency},
        {9, "root-counting classifier vs interval map", 0.0, bk_classifier_grid},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        Checker checker;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(checker);
        } catch (const std::exception& e) {
            checker.failures.push_back(std::string("unexpected exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        if (criterion.budget_seconds > 0.0 && elapsed >= criterion.budget_seconds) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "runtime %.2f s exceeded the %.0f s budget", elapsed,
                          criterion.budget_seconds);
            checker.failures.push_back(buf);
        }

        const bool ok = checker.failures.empty();
        std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.name, elapsed);
        for (const std::string& what : checker.failures) {
            std::printf("    - %s\n", what.c_str());
        }
        if (!ok) {
            ++failed;
        }
    }

    if (failed == 0) {
        std::printf("all %zu criteria passed\n", criteria.size());
    } else {
        std::printf("%d criteria failed\n", failed);
    }
    return failed;
}
