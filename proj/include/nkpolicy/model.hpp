#pragma once

#include <string>
#include <vector>

#include "nkpolicy/lre.hpp"

namespace nkpolicy {

/// Structural parameters of the transmission mechanism and the policy maker.
/// The welfare weight on the instrument is kappa/epsilon and is derived where
/// needed, not stored.
struct ModelParams {
    double beta = 0.0;      ///< discount factor, in (0,1)
    double kappa = 0.0;     ///< Phillips-curve slope, > 0
    double rho = 0.0;       ///< shock autocorrelation, in (0,1)
    double sigma_eps = 1.0; ///< shock standard deviation, >= 0
    double epsilon = 0.0;   ///< elasticity of substitution, > 1
    double q = 1.0;         ///< commitment probability, in (0,1]

    /// Every violated invariant, in declaration order; empty when valid.
    std::vector<std::string> violations() const;

    /// Throws InvalidParams listing every violation, not just the first.
    void validate() const;
};

enum class InstrumentConvention {
    Predetermined,  ///< x0 given; initial inflation anchored by rule inversion
    ForwardLooking, ///< x0 free; solution projected on the stable eigenvector
};

const char* to_string(InstrumentConvention convention);

/// Proportional feedback rule x_t = f_pi * pi_t + f_z * z_t.
struct PolicyRule {
    double f_pi = 0.0;
    double f_z = 0.0;
    InstrumentConvention convention = InstrumentConvention::Predetermined;

    /// ForwardLooking requires f_z == 0 (identification restriction);
    /// violations throw IdentificationError.
    void validate() const;
};

/// The 2x2 system obtained by substituting the rule into the transmission
/// mechanism. State order is (pi, z).
struct ClosedLoopSystem {
    LinearRESystem base;
    PolicyRule rule;
    ModelParams params;
    double lambda_sr = 0.0; ///< (1 - kappa*f_pi)/beta, the (0,0) transition entry
};

/// Transmission mechanism in Kalman canonical form, state order (pi, z):
///   A = [[1/beta, -1/beta], [0, rho]],  B = [-kappa/beta, 0]^T,
///   shock loading [0, 1]^T; z predetermined, pi non-predetermined.
LinearRESystem build_open_loop(const ModelParams& params);

/// Closed loop under the rule. Transition
///   [[(1 - kappa*f_pi)/beta, (-1 - kappa*f_z)/beta], [0, rho]].
/// Predetermined convention counts zero jump variables (initial inflation is
/// anchored by rule inversion, so determinacy needs both roots stable);
/// ForwardLooking counts one.
ClosedLoopSystem close_loop(const ModelParams& params, const PolicyRule& rule);

/// (1 - kappa*f_pi)/beta.
double closed_loop_inflation_eigenvalue(const ModelParams& params, double f_pi);

} // namespace nkpolicy
