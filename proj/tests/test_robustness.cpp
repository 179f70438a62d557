#include <cmath>
#include <random>

#include "doctest.h"

#include "nkpolicy/csv_io.hpp"
#include "nkpolicy/robustness.hpp"
#include "nkpolicy/solvers.hpp"
#include "test_support.hpp"

using namespace nkpolicy;

TEST_CASE("compensating slope restriction") {
    const auto p = nktest::table2_params();

    SUBCASE("inverting the worked-example projection recovers kappa") {
        const double g = forward_projection(p, -6.0).g;
        const double kappa = compensating_kappa(-6.0, g, p.rho, p.beta);
        CHECK(kappa == doctest::Approx(0.1275).epsilon(1e-12));
        // the sign-flipped variant gives the negation
        CHECK(compensating_kappa_flipped(-6.0, g, p.rho, p.beta) ==
              doctest::Approx(-0.1275).epsilon(1e-12));
    }

    SUBCASE("the open-loop projection needs no slope at all") {
        const double g = 1.0 / (1.0 - p.rho * p.beta);
        CHECK(std::abs(compensating_kappa(3.7, g, p.rho, p.beta)) < 1e-15);
    }

    SUBCASE("round trip through the projection, negative-feedback side too") {
        for (double f_pi : {-6.0, -2.5, 16.0}) {
            const double g = forward_projection(p, f_pi).g;
            const double kappa = compensating_kappa(f_pi, g, p.rho, p.beta);
            ModelParams perturbed = p;
            perturbed.kappa = kappa;
            CHECK(forward_projection(perturbed, f_pi).g == doctest::Approx(g).epsilon(1e-9));
        }
    }

    SUBCASE("degenerate inputs are rejected") {
        CHECK_THROWS_AS(compensating_kappa(0.0, 1.0, 0.8, 0.99), InvalidParams);
        CHECK_THROWS_AS(compensating_kappa(-6.0, 0.0, 0.8, 0.99), InvalidParams);
        CHECK_THROWS_AS(compensating_kappa_flipped(0.0, 1.0, 0.8, 0.99), InvalidParams);
    }
}

TEST_CASE("misspecification stress") {
    const auto p = nktest::table2_params();
    StressSettings settings;
    settings.grid_radius = 0.01;
    settings.grid_steps = 3;
    settings.horizon = 40;
    settings.threshold = 10.0;

    SUBCASE("discretion diverges off the projection line at the unstable rate") {
        const MisspecReport report = misspecification_stress(
            p, IrfMode::Discretion, std::nullopt, std::nullopt, 1.0, settings);
        CHECK(report.regime == FeedbackClass::PositiveFeedback);
        CHECK(report.points.size() == 27);

        int diverged = 0;
        int invalid = 0;
        for (const auto& point : report.points) {
            if (point.status == StressPointStatus::InvalidParams) {
                ++invalid;
                CHECK(point.dbeta == doctest::Approx(0.01)); // beta + 0.01 = 1.0 is out
                continue;
            }
            const bool nominal =
                point.dbeta == 0.0 && point.dkappa == 0.0 && point.drho == 0.0;
            if (nominal) {
                CHECK(point.status == StressPointStatus::Stable);
                continue;
            }
            CHECK(point.status == StressPointStatus::Diverged);
            REQUIRE(point.divergence_horizon.has_value());
            CHECK(*point.divergence_horizon > 0);
            ++diverged;

            // the gap grows like the perturbed unstable root
            ModelParams truth = p;
            truth.beta += point.dbeta;
            truth.kappa += point.dkappa;
            truth.rho += point.drho;
            const double lambda = closed_loop_inflation_eigenvalue(truth, -p.epsilon);
            REQUIRE(point.growth_ratio.has_value());
            CHECK(std::abs(*point.growth_ratio - std::abs(lambda)) <=
                  0.01 * std::abs(lambda));
        }
        CHECK(invalid == 9);
        CHECK(diverged == 17);
        CHECK(report.stable_fraction == doctest::Approx(1.0 / 18.0).epsilon(1e-12));
    }

    SUBCASE("a kappa-only perturbation of the discretion solution diverges in finite time") {
        StressSettings tight = settings;
        tight.grid_steps = 3;
        const MisspecReport report = misspecification_stress(
            p, IrfMode::Discretion, std::nullopt, std::nullopt, 1.0, tight);
        for (const auto& point : report.points) {
            if (point.dbeta == 0.0 && point.drho == 0.0 && point.dkappa > 0.0) {
                CHECK(point.status == StressPointStatus::Diverged);
                CHECK(*point.divergence_horizon < 20);
            }
        }
    }

    SUBCASE("the commitment solution shrugs off the same grid") {
        const MisspecReport report = misspecification_stress(
            p, IrfMode::RamseyQuasiCommitment, std::nullopt, std::nullopt, 1.0, settings);
        CHECK(report.regime == FeedbackClass::NegativeFeedback);
        CHECK(report.stable_fraction == 1.0);
        for (const auto& point : report.points) {
            CHECK(point.status != StressPointStatus::Diverged);
        }
    }

    SUBCASE("zero radius means no misspecification") {
        StressSettings zero = settings;
        zero.grid_radius = 0.0;
        const MisspecReport report = misspecification_stress(
            p, IrfMode::Discretion, std::nullopt, std::nullopt, 1.0, zero);
        CHECK(report.stable_fraction == 1.0);
        for (const auto& point : report.points) {
            CHECK(point.status == StressPointStatus::Stable);
        }
    }

    SUBCASE("on the compensating manifold the forward path stays on the line") {
        const double g = forward_projection(p, -6.0).g;
        for (double beta_true : {0.98, 0.985, 0.995}) {
            const double kappa_true = compensating_kappa(-6.0, g, p.rho, beta_true);
            // propagate the perturbed recursion by hand and watch the gap
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
            CHECK(worst <= 1e-8 * std::abs(g));
        }
    }

    SUBCASE("off the manifold the gap is eventually monotone at the unstable rate") {
        ModelParams truth = p;
        truth.kappa += 0.01;
        const double g = forward_projection(p, -6.0).g; // nominal line
        const double lambda = closed_loop_inflation_eigenvalue(truth, -6.0);
        const double m01 = -1.0 / truth.beta;
        double pi = g;
        double z = 1.0;
        double previous_gap = 0.0;
        for (int t = 0; t < 40; ++t) {
            const double gap = std::abs(pi - g * z);
            if (t > 5) {
                CHECK(gap > previous_gap);
                CHECK(gap / previous_gap == doctest::Approx(lambda).epsilon(0.01));
            }
            previous_gap = gap;
            const double pi_next = lambda * pi + m01 * z;
            z *= truth.rho;
            pi = pi_next;
        }
    }

    SUBCASE("negative-feedback paths stay bounded under small perturbations") {
        std::mt19937_64 gen(173);
        std::uniform_real_distribution<double> delta(-0.01, 0.01);
        const RamseySolution sol = ramsey_rule(p);
        for (int rep = 0; rep < 30; ++rep) {
            ModelParams truth = p;
            truth.beta += delta(gen);
            truth.kappa += delta(gen);
            truth.rho += delta(gen);
            if (!truth.violations().empty()) {
                continue;
            }
            const double lambda = closed_loop_inflation_eigenvalue(truth, sol.f_pi_star);
            REQUIRE(std::abs(lambda) < 1.0);
            const double m01 = (-1.0 - truth.kappa * sol.f_z_star) / truth.beta;
            double pi = sol.pi0;
            double z = 1.0;
            double sup = 0.0;
            for (int t = 0; t < 200; ++t) {
                sup = std::max(sup, std::abs(pi));
                const double pi_next = lambda * pi + m01 * z;
                z *= truth.rho;
                pi = pi_next;
            }
            CHECK(sup < 10.0);
        }
    }

    SUBCASE("predetermined-instrument stress needs its inputs") {
        CHECK_THROWS_AS(misspecification_stress(p, IrfMode::PredeterminedInstrument,
                                                std::nullopt, std::nullopt, 1.0, settings),
                        InvalidParams);
        const PolicyRule rule{4.51, -6.83, InstrumentConvention::Predetermined};
        CHECK_THROWS_AS(misspecification_stress(p, IrfMode::PredeterminedInstrument, rule,
                                                std::nullopt, 1.0, settings),
                        InvalidParams);
        CHECK_NOTHROW(misspecification_stress(p, IrfMode::PredeterminedInstrument, rule, -3.9,
                                              1.0, settings));
    }
}

TEST_CASE("stress report serialization") {
    const auto p = nktest::table2_params();
    StressSettings settings;
    settings.grid_radius = 0.01;
    settings.grid_steps = 3;
    settings.horizon = 30;
    const MisspecReport report = misspecification_stress(p, IrfMode::Discretion, std::nullopt,
                                                         std::nullopt, 1.0, settings);
    const std::string csv = format_stress_csv(report);
    CHECK(csv.rfind("dbeta,dkappa,drho,diverged,divergence_horizon\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 28); // header + 27 grid points
    // invalid rows leave the outcome columns empty
    CHECK(csv.find("0.01,-0.01,-0.01,,\n") != std::string::npos);
    // the nominal row is stable
    CHECK(csv.find("0,0,0,0,\n") != std::string::npos);
}
