#pragma once

#include <optional>
#include <vector>

#include "nkpolicy/determinacy.hpp"
#include "nkpolicy/irf.hpp"
#include "nkpolicy/model.hpp"

namespace nkpolicy {

/// The kappa that leaves the stable projection g unchanged given (f_pi,
/// rho*beta), from inverting g = 1/(1 - kappa*f_pi - rho*beta):
///   kappa = (1 - rho*beta - 1/g) / f_pi.
/// forward_projection at the returned kappa recovers g to round-off.
double compensating_kappa(double f_pi, double g, double rho, double beta);

/// Sign-flipped variant of the same inversion, kept for comparison studies;
/// returns the negation of compensating_kappa.
double compensating_kappa_flipped(double f_pi, double g, double rho, double beta);

enum class StressPointStatus {
    Stable,
    Diverged,
    InvalidParams, ///< perturbed parameters left the admissible region; excluded from stable_fraction
};

const char* to_string(StressPointStatus status);

struct StressPoint {
    double dbeta = 0.0;
    double dkappa = 0.0;
    double drho = 0.0;
    StressPointStatus status = StressPointStatus::Stable;
    std::optional<int> divergence_horizon;   ///< first t with gap above threshold
    std::optional<double> growth_ratio;      ///< late-sample gap_{t}/gap_{t-1}
};

struct MisspecReport {
    std::vector<StressPoint> points; ///< full grid, in grid order
    double stable_fraction = 1.0;    ///< stable / (stable + diverged)
    FeedbackClass regime = FeedbackClass::NegativeFeedback;
};

struct StressSettings {
    double grid_radius = 0.01; ///< half-width of each perturbation axis
    int grid_steps = 3;        ///< points per axis (full 3d product grid)
    int horizon = 40;
    double threshold = 10.0;   ///< scale-free divergence multiplier
};

/// Misspecification stress test: the solved rule (and projection or initial
/// instrument) is held fixed at the nominal parameters while the true
/// dynamics run at (beta+dbeta, kappa+dkappa, rho+drho) over the full
/// perturbation grid.
///
/// Forward-looking/discretion modes monitor |pi_t - g*z_t| against
/// threshold*|g*z0|; predetermined/commitment modes monitor |pi_t| against
/// threshold*max(|pi0|, |z0|). Grid points whose perturbed parameters are
/// invalid are marked and excluded from the stable fraction.
///
/// `rule` is required for the simple-rule modes and ignored for the
/// commitment/discretion modes (their rules are solved internally); `x0` is
/// required for PredeterminedInstrument only.
MisspecReport misspecification_stress(const ModelParams& params, IrfMode mode,
                                      const std::optional<PolicyRule>& rule,
                                      std::optional<double> x0, double z0,
                                      const StressSettings& settings);

} // namespace nkpolicy
