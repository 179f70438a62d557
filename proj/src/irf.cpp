#include "nkpolicy/irf.hpp"

#include <cmath>
#include <random>

namespace nkpolicy {

const char* to_string(IrfMode mode) {
    switch (mode) {
        case IrfMode::PredeterminedInstrument: return "predetermined";
        case IrfMode::RamseyQuasiCommitment: return "ramsey";
        case IrfMode::ForwardLookingInstrument: return "forward";
        case IrfMode::Discretion: return "discretion";
    }
    return "unknown";
}

namespace {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One mode, one propagation recipe: either the closed-loop recursion
// pi_{t+1} = m00*pi_t + m01*z_t, or re-anchoring on the stable projection
// pi_t = g*z_t every period.
struct ModeSetup {
    PolicyRule rule;
    double pi0 = 0.0;
    double m00 = 0.0;
    double m01 = 0.0;
    bool reanchor = false;
    double g = 0.0;
};

ModeSetup resolve_mode(const ModelParams& params, IrfMode mode,
                       const std::optional<PolicyRule>& rule, double z0,
                       const std::optional<double>& x0) {
    ModeSetup setup;
    switch (mode) {
        case IrfMode::PredeterminedInstrument: {
            if (!rule) {
                throw InvalidParams("predetermined-instrument paths need a policy rule");
            }
            if (rule->convention != InstrumentConvention::Predetermined) {
                throw InvalidParams("predetermined-instrument mode needs a rule with the "
                                    "predetermined convention");
            }
            if (!x0) {
                throw InvalidParams("predetermined-instrument paths need x0");
            }
            params.validate();
            setup.rule = *rule;
            setup.pi0 = anchor_inflation(*rule, *x0, z0);
            setup.m00 = (1.0 - params.kappa * rule->f_pi) / params.beta;
            setup.m01 = (-1.0 - params.kappa * rule->f_z) / params.beta;
            break;
        }
        case IrfMode::RamseyQuasiCommitment: {
            // x0 is the optimal one, computed internally; a supplied x0 is ignored.
            const RamseySolution sol = ramsey_rule(params);
            const double bq = params.beta * params.q;
            setup.rule = sol.rule();
            setup.pi0 = sol.pi0 * z0;
            // Credibility-weighted closed loop; at q = 1 these are exactly the
            // close_loop entries. The commitment recursion x_t = x_{t-1} -
            // epsilon*pi_t holds identically along this loop for every q.
            setup.m00 = (1.0 - params.kappa * sol.f_pi_star) / bq;
            setup.m01 = (-1.0 - params.kappa * sol.f_z_star) / bq;
            break;
        }
        case IrfMode::ForwardLookingInstrument: {
            if (!rule) {
                throw InvalidParams("forward-looking paths need a policy rule");
            }
            if (rule->convention != InstrumentConvention::ForwardLooking) {
                throw InvalidParams("forward-looking mode needs a rule with the "
                                    "forward-looking convention");
            }
            rule->validate();
            const StableProjection proj = forward_projection(params, rule->f_pi);
            setup.rule = *rule;
            setup.reanchor = true;
            setup.g = proj.g;
            setup.pi0 = proj.g * z0;
            break;
        }
        case IrfMode::Discretion: {
            const DiscretionSolution sol = discretion_solution(params);
            setup.rule = sol.rule;
            setup.reanchor = true;
            setup.g = sol.projection.g;
            setup.pi0 = sol.projection.g * z0;
            break;
        }
    }
    return setup;
}

// Shared by expected and simulated paths so that a zero shock sequence
// reproduces the expected path bit for bit.
template <typename ShockFn>
IRFPath propagate(const ModelParams& params, IrfMode mode, const ModeSetup& setup, double z0,
                  int horizon, ShockFn&& shock_at) {
    IRFPath path;
    path.horizon = horizon;
    path.mode = mode;
    path.pi.reserve(horizon);
    path.x.reserve(horizon);
    path.z.reserve(horizon);

    double pi = setup.pi0;
    double z = z0;
    for (int t = 0; t < horizon; ++t) {
        path.pi.push_back(pi);
        path.z.push_back(z);
        path.x.push_back(setup.rule.f_pi * pi + setup.rule.f_z * z);
        const double z_next = params.rho * z + shock_at(t + 1);
        pi = setup.reanchor ? setup.g * z_next : setup.m00 * pi + setup.m01 * z;
        z = z_next;
    }
    return path;
}

} // namespace

IRFPath expected_irf(const ModelParams& params, IrfMode mode,
                     const std::optional<PolicyRule>& rule, double z0,
                     std::optional<double> x0, int horizon) {
    params.validate();
    if (horizon < 1) {
        throw InvalidParams("horizon must be at least 1");
    }
    const ModeSetup setup = resolve_mode(params, mode, rule, z0, x0);
    return propagate(params, mode, setup, z0, horizon, [](int) { return 0.0; });
}

IRFPath simulate(const ModelParams& params, IrfMode mode,
                 const std::optional<PolicyRule>& rule, double z0,
                 std::optional<double> x0, int horizon, std::uint64_t seed) {
    params.validate();
    if (horizon < 1) {
        throw InvalidParams("horizon must be at least 1");
    }
    const ModeSetup setup = resolve_mode(params, mode, rule, z0, x0);

    std::uint64_t scramble = seed;
    std::mt19937_64 gen(splitmix64_next(scramble));
    std::normal_distribution<double> standard_normal(0.0, 1.0);
    const double sigma = params.sigma_eps;

    IRFPath path = propagate(params, mode, setup, z0, horizon,
                             [&](int) { return sigma * standard_normal(gen); });
    path.seed = seed;
    return path;
}

double foc_recursion_check(const IRFPath& path, const ModelParams& params) {
    params.validate();
    if (path.seed.has_value()) {
        throw InvalidParams("the commitment recursion check applies to expected paths, "
                            "not stochastic simulations");
    }
    if (path.pi.size() != path.x.size() || static_cast<int>(path.pi.size()) != path.horizon) {
        throw InvalidParams("malformed path: series lengths must equal the horizon");
    }

    double worst = 0.0;
    for (std::size_t t = 1; t < path.x.size(); ++t) {
        const double residual = path.x[t] - path.x[t - 1] + params.epsilon * path.pi[t];
        worst = std::max(worst, std::abs(residual));
    }
    return worst;
}

std::vector<std::uint64_t> derive_path_seeds(std::uint64_t master_seed, int n_paths) {
    if (n_paths < 0) {
        throw InvalidParams("the number of paths must be non-negative");
    }
    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(n_paths));
    std::uint64_t state = master_seed;
    for (int i = 0; i < n_paths; ++i) {
        seeds.push_back(splitmix64_next(state));
    }
    return seeds;
}

} // namespace nkpolicy
