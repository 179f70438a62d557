#pragma once

#include "nkpolicy/model.hpp"
#include "nkpolicy/path.hpp"

namespace nkpolicy {

/// Placement of the commitment probability q in the initial-condition
/// denominators of the commitment solution. The two published expressions
/// disagree for q < 1 (they coincide at q = 1): the shock-feedback
/// coefficient carries q in 1 - beta*q*rho*lambda while the initial
/// instrument is written with 1 - beta*rho*lambda.
enum class InitialStateVariant {
    AsPrinted,          ///< x0*, pi0 with 1 - beta*rho*lambda (no q)
    CommitmentWeighted, ///< q in every denominator; rule inversion then matches gamma0 = 0 for q < 1
};

/// Ramsey optimal policy under quasi-commitment, reduced to a proportional
/// rule with a predetermined instrument. x0_star and pi0 are per unit of z0.
struct RamseySolution {
    double lambda = 0.0;    ///< inflation eigenvalue, in (0, 1)
    double f_pi_star = 0.0; ///< (1 - beta*q*lambda)/kappa == epsilon*lambda/(1 - lambda)
    double f_z_star = 0.0;  ///< -f_pi_star / (1 - beta*q*rho*lambda)
    double x0_star = 0.0;   ///< optimal initial instrument per unit z0
    double pi0 = 0.0;       ///< anchored initial inflation per unit z0 (= -x0_star/epsilon)
    double gamma0 = 0.0;    ///< multiplier on inflation at date 0; zero by optimality

    /// The observationally equivalent simple rule (predetermined instrument).
    PolicyRule rule() const {
        return PolicyRule{f_pi_star, f_z_star, InstrumentConvention::Predetermined};
    }
};

/// Stable-eigenvector solution pi_t = g * z_t, x_t = x_coefficient * z_t.
struct StableProjection {
    double g = 0.0;
    double x_coefficient = 0.0;
};

struct DiscretionSolution {
    PolicyRule rule; ///< f_pi = -epsilon, f_z = 0, forward-looking instrument
    StableProjection projection;
};

/// Smaller root of  lambda^2 - S*lambda + 1/(beta*q) = 0  with
/// S = 1 + 1/(beta*q) + epsilon*kappa/(beta*q), evaluated in the
/// cancellation-free product form. The result lies in (0, 1), hence inside
/// (0, 1/(beta*q)); membership is verified and an InternalError is thrown on
/// violation.
double ramsey_lambda(const ModelParams& params);

/// Full commitment solution. f_pi_star is computed both as
/// (1 - beta*q*lambda)/kappa and as epsilon*lambda/(1 - lambda) and
/// cross-checked to relative 1e-9; disagreement throws InternalError.
RamseySolution ramsey_rule(const ModelParams& params,
                           InitialStateVariant variant = InitialStateVariant::AsPrinted);

/// Zero-credibility (static) solution: rule f_pi = -epsilon with a
/// forward-looking instrument, projection g = 1/(1 - beta*rho + kappa*epsilon).
/// Solved as its own static problem, not as the q -> 0 limit of the
/// quasi-commitment solver (the two are separated by a bifurcation).
DiscretionSolution discretion_solution(const ModelParams& params);

/// Eigenvector projection for a forward-looking instrument:
/// g = 1/(1 - kappa*f_pi - rho*beta) = (1/beta)/(lambda_sr - rho).
/// Requires |lambda_sr| > 1 (NotDeterminateUnderConvention otherwise);
/// a vanishing denominator throws SingularProjection.
StableProjection forward_projection(const ModelParams& params, double f_pi);

/// pi0 = (x0 - f_z*z0)/f_pi. Predetermined-instrument rules only;
/// f_pi == 0 throws NonInvertibleRule.
double anchor_inflation(const PolicyRule& rule, double x0, double z0);

/// x0 = f_pi*pi0_bar + f_z*z0: the instrument jumps to deliver a prescribed
/// initial inflation. Valid for any rule.
double instrument_from_target(const PolicyRule& rule, double pi0_bar, double z0);

/// Truncated discounted loss
///   sum_{t=0}^{horizon-1} (beta*q)^t * 0.5*(pi_t^2 + (kappa/epsilon)*x_t^2).
/// No terminal or continuation value is added. The path must be at least
/// `horizon` periods long.
double ramsey_loss(const IRFPath& path, const ModelParams& params, int horizon);

/// Geometric bound on the truncation error of ramsey_loss:
/// (beta*q)^horizon / (1 - beta*q) * max per-period loss observed on the path.
double ramsey_loss_tail_bound(const IRFPath& path, const ModelParams& params, int horizon);

} // namespace nkpolicy
