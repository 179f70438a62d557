#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nkpolicy/model.hpp"
#include "nkpolicy/path.hpp"
#include "nkpolicy/solvers.hpp"

namespace nkpolicy {

/// Expected impulse response following z0.
///
/// Initial inflation per mode:
///   PredeterminedInstrument  pi0 = (x0 - f_z*z0)/f_pi   (x0 required)
///   RamseyQuasiCommitment    pi0 = lambda/(1 - beta*rho*lambda) * z0
///   ForwardLookingInstrument pi0 = g * z0                (x0 ignored)
///   Discretion               pi0 = g * z0                (x0 ignored)
///
/// The first two modes iterate the closed-loop recursion (the commitment
/// mode with the credibility-weighted denominators, identical at q = 1);
/// the last two stay on the stable projection pi_t = g*z_t. The instrument
/// series follows the rule at every date.
IRFPath expected_irf(const ModelParams& params, IrfMode mode,
                     const std::optional<PolicyRule>& rule, double z0,
                     std::optional<double> x0, int horizon);

/// Stochastic path: z_{t+1} = rho*z_t + sigma_eps*eps_{t+1} with eps drawn
/// standard normal from a seeded generator (splitmix64-scrambled seed into
/// mt19937_64, std::normal_distribution). sigma_eps = 0 reproduces
/// expected_irf bit for bit. Bit-exact reproducibility holds within one
/// build; across standard libraries only the distribution is guaranteed.
IRFPath simulate(const ModelParams& params, IrfMode mode,
                 const std::optional<PolicyRule>& rule, double z0,
                 std::optional<double> x0, int horizon, std::uint64_t seed);

/// max_{t>=1} |x_t - x_{t-1} + epsilon*pi_t|: the commitment first-order
/// recursion. Holds to round-off on commitment expected paths; order-one on
/// discretion paths. Stochastic paths are rejected (InvalidParams).
double foc_recursion_check(const IRFPath& path, const ModelParams& params);

/// Deterministic per-path seeds for Monte-Carlo batches: the i-th output of
/// a splitmix64 stream started at master_seed.
std::vector<std::uint64_t> derive_path_seeds(std::uint64_t master_seed, int n_paths);

} // namespace nkpolicy
