#include "nkpolicy/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nkpolicy {

double ramsey_lambda(const ModelParams& params) {
    params.validate();

    const double bq = params.beta * params.q;
    const double product = 1.0 / bq; // product of the two roots
    const double sum = 1.0 + product + params.epsilon * params.kappa / bq;
    const double half = 0.5 * sum;
    // epsilon > 1, kappa > 0 keep the discriminant strictly positive.
    const double larger = half + std::sqrt(half * half - product);
    const double lambda = product / larger; // smaller root, free of cancellation

    if (!(lambda > 0.0 && lambda < product)) {
        std::ostringstream msg;
        msg << "inflation eigenvalue " << lambda << " escaped (0, " << product << ")";
        throw InternalError(msg.str());
    }
    return lambda;
}

RamseySolution ramsey_rule(const ModelParams& params, InitialStateVariant variant) {
    const double lambda = ramsey_lambda(params);
    const double bq = params.beta * params.q;

    const double f_pi_direct = (1.0 - bq * lambda) / params.kappa;
    const double f_pi_ratio = params.epsilon * lambda / (1.0 - lambda);
    const double scale = std::max(std::abs(f_pi_direct), std::abs(f_pi_ratio));
    if (std::abs(f_pi_direct - f_pi_ratio) > 1e-9 * scale) {
        std::ostringstream msg;
        msg << "rule coefficient cross-check failed: (1-bq*lambda)/kappa = " << f_pi_direct
            << " vs epsilon*lambda/(1-lambda) = " << f_pi_ratio;
        throw InternalError(msg.str());
    }

    const double shock_denominator = 1.0 - bq * params.rho * lambda;
    const double initial_denominator = variant == InitialStateVariant::CommitmentWeighted
                                           ? shock_denominator
                                           : 1.0 - params.beta * params.rho * lambda;

    RamseySolution sol;
    sol.lambda = lambda;
    sol.f_pi_star = f_pi_direct;
    sol.f_z_star = -f_pi_direct / shock_denominator;
    sol.x0_star = -params.epsilon * lambda / initial_denominator;
    sol.pi0 = lambda / initial_denominator;
    sol.gamma0 = 0.0;
    return sol;
}

DiscretionSolution discretion_solution(const ModelParams& params) {
    params.validate();
    // q plays no role: the zero-credibility problem is static and its
    // reduced-form response is the negative of the elasticity of
    // substitution, a positive-feedback rule.
    PolicyRule rule{-params.epsilon, 0.0, InstrumentConvention::ForwardLooking};
    return DiscretionSolution{rule, forward_projection(params, rule.f_pi)};
}

StableProjection forward_projection(const ModelParams& params, double f_pi) {
    params.validate();

    const double lambda_sr = (1.0 - params.kappa * f_pi) / params.beta;
    const double denominator = 1.0 - params.kappa * f_pi - params.rho * params.beta;

    if (!(std::abs(lambda_sr) > 1.0)) {
        std::ostringstream msg;
        msg << "|lambda_sr| = " << std::abs(lambda_sr)
            << " is not outside the unit circle; the projection is not the unique bounded "
               "solution under a forward-looking instrument";
        throw NotDeterminateUnderConvention(msg.str());
    }
    const double magnitude = std::max({1.0, std::abs(params.kappa * f_pi),
                                       std::abs(params.rho * params.beta)});
    if (std::abs(denominator) <= 1e-12 * magnitude) {
        throw SingularProjection("lambda_sr coincides with rho: the eigenvector projection "
                                 "is singular");
    }

    StableProjection proj;
    proj.g = 1.0 / denominator;
    proj.x_coefficient = f_pi * proj.g;
    return proj;
}

double anchor_inflation(const PolicyRule& rule, double x0, double z0) {
    rule.validate();
    if (rule.convention != InstrumentConvention::Predetermined) {
        throw InvalidParams("anchoring by rule inversion requires a predetermined instrument");
    }
    if (rule.f_pi == 0.0) {
        throw NonInvertibleRule("f_pi = 0: the rule cannot be inverted for initial inflation");
    }
    return (x0 - rule.f_z * z0) / rule.f_pi;
}

double instrument_from_target(const PolicyRule& rule, double pi0_bar, double z0) {
    rule.validate();
    return rule.f_pi * pi0_bar + rule.f_z * z0;
}

double ramsey_loss(const IRFPath& path, const ModelParams& params, int horizon) {
    params.validate();
    if (horizon < 0) {
        throw InvalidParams("loss horizon must be non-negative");
    }
    const auto needed = static_cast<std::size_t>(horizon);
    if (path.pi.size() < needed || path.x.size() < needed) {
        throw InvalidParams("path is shorter than the requested loss horizon");
    }

    const double weight = params.kappa / params.epsilon;
    const double bq = params.beta * params.q;
    double discount = 1.0;
    double total = 0.0;
    for (int t = 0; t < horizon; ++t) {
        total += discount * 0.5 * (path.pi[t] * path.pi[t] + weight * path.x[t] * path.x[t]);
        discount *= bq;
    }
    return total;
}

double ramsey_loss_tail_bound(const IRFPath& path, const ModelParams& params, int horizon) {
    params.validate();
    if (horizon < 0) {
        throw InvalidParams("loss horizon must be non-negative");
    }
    const double weight = params.kappa / params.epsilon;
    double max_period_loss = 0.0;
    const std::size_t usable = std::min(path.pi.size(), path.x.size());
    for (std::size_t t = 0; t < usable; ++t) {
        max_period_loss = std::max(
            max_period_loss, 0.5 * (path.pi[t] * path.pi[t] + weight * path.x[t] * path.x[t]));
    }
    const double bq = params.beta * params.q;
    return std::pow(bq, horizon) / (1.0 - bq) * max_period_loss;
}

} // namespace nkpolicy
