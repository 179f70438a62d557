#include "nkpolicy/robustness.hpp"

#include <cmath>

#include "nkpolicy/solvers.hpp"

namespace nkpolicy {

const char* to_string(StressPointStatus status) {
    switch (status) {
        case StressPointStatus::Stable: return "stable";
        case StressPointStatus::Diverged: return "diverged";
        case StressPointStatus::InvalidParams: return "invalid-params";
    }
    return "unknown";
}

double compensating_kappa(double f_pi, double g, double rho, double beta) {
    if (f_pi == 0.0 || g == 0.0) {
        throw InvalidParams("compensating kappa needs f_pi != 0 and g != 0");
    }
    return (1.0 - rho * beta - 1.0 / g) / f_pi;
}

double compensating_kappa_flipped(double f_pi, double g, double rho, double beta) {
    if (f_pi == 0.0 || g == 0.0) {
        throw InvalidParams("compensating kappa needs f_pi != 0 and g != 0");
    }
    return (1.0 / g + rho * beta - 1.0) / f_pi;
}

namespace {

struct NominalSolution {
    PolicyRule rule;
    double pi0 = 0.0;          // per the given z0
    bool projection_mode = false;
    double g = 0.0;            // stable projection, projection modes only
};

NominalSolution resolve_nominal(const ModelParams& params, IrfMode mode,
                                const std::optional<PolicyRule>& rule,
                                const std::optional<double>& x0, double z0) {
    NominalSolution nominal;
    switch (mode) {
        case IrfMode::PredeterminedInstrument: {
            if (!rule || rule->convention != InstrumentConvention::Predetermined) {
                throw InvalidParams("predetermined-instrument stress needs a rule with the "
                                    "predetermined convention");
            }
            if (!x0) {
                throw InvalidParams("predetermined-instrument stress needs x0");
            }
            nominal.rule = *rule;
            nominal.pi0 = anchor_inflation(*rule, *x0, z0);
            break;
        }
        case IrfMode::RamseyQuasiCommitment: {
            const RamseySolution sol = ramsey_rule(params);
            nominal.rule = sol.rule();
            nominal.pi0 = sol.pi0 * z0;
            break;
        }
        case IrfMode::ForwardLookingInstrument: {
            if (!rule || rule->convention != InstrumentConvention::ForwardLooking) {
                throw InvalidParams("forward-looking stress needs a rule with the "
                                    "forward-looking convention");
            }
            rule->validate();
            const StableProjection proj = forward_projection(params, rule->f_pi);
            nominal.rule = *rule;
            nominal.projection_mode = true;
            nominal.g = proj.g;
            nominal.pi0 = proj.g * z0;
            break;
        }
        case IrfMode::Discretion: {
            const DiscretionSolution sol = discretion_solution(params);
            nominal.rule = sol.rule;
            nominal.projection_mode = true;
            nominal.g = sol.projection.g;
            nominal.pi0 = sol.projection.g * z0;
            break;
        }
    }
    return nominal;
}

std::vector<double> grid_offsets(double radius, int steps) {
    std::vector<double> offsets;
    offsets.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        offsets.push_back(0.0);
        return offsets;
    }
    const double step = 2.0 * radius / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        offsets.push_back(i + 1 == steps ? radius : -radius + i * step);
    }
    return offsets;
}

} // namespace

MisspecReport misspecification_stress(const ModelParams& params, IrfMode mode,
                                      const std::optional<PolicyRule>& rule,
                                      std::optional<double> x0, double z0,
                                      const StressSettings& settings) {
    params.validate();
    if (settings.grid_radius < 0.0) {
        throw InvalidParams("grid radius must be non-negative");
    }
    if (settings.grid_steps < 1) {
        throw InvalidParams("grid needs at least one point per axis");
    }
    if (settings.horizon < 1) {
        throw InvalidParams("stress horizon must be at least 1");
    }
    if (!(settings.threshold > 0.0)) {
        throw InvalidParams("divergence threshold must be positive");
    }

    const NominalSolution nominal = resolve_nominal(params, mode, rule, x0, z0);

    // Scale-free divergence cutoff: the projection line's own magnitude for
    // forward modes, the initial state otherwise.
    const double scale = nominal.projection_mode
                             ? std::abs(nominal.g * z0)
                             : std::max(std::abs(nominal.pi0), std::abs(z0));
    const double cutoff = settings.threshold * scale;

    const std::vector<double> offsets = grid_offsets(settings.grid_radius, settings.grid_steps);

    MisspecReport report;
    report.regime = classify_feedback(params, nominal.rule.f_pi);
    report.points.reserve(offsets.size() * offsets.size() * offsets.size());

    int n_stable = 0;
    int n_diverged = 0;

    for (double dbeta : offsets) {
        for (double dkappa : offsets) {
            for (double drho : offsets) {
                StressPoint point;
                point.dbeta = dbeta;
                point.dkappa = dkappa;
                point.drho = drho;

                ModelParams truth = params;
                truth.beta += dbeta;
                truth.kappa += dkappa;
                truth.rho += drho;
                if (!truth.violations().empty()) {
                    point.status = StressPointStatus::InvalidParams;
                    report.points.push_back(point);
                    continue;
                }

                // True dynamics under the perturbed parameters, with the rule
                // (and hence pi0 / the projection line) frozen at nominal.
                const double m00 = (1.0 - truth.kappa * nominal.rule.f_pi) / truth.beta;
                const double m01 = (-1.0 - truth.kappa * nominal.rule.f_z) / truth.beta;

                double pi = nominal.pi0;
                double z = z0;
                double gap_prev = 0.0;
                double gap_last = 0.0;
                std::optional<int> diverged_at;
                for (int t = 0; t < settings.horizon; ++t) {
                    const double gap = nominal.projection_mode
                                           ? std::abs(pi - nominal.g * z)
                                           : std::abs(pi);
                    gap_prev = gap_last;
                    gap_last = gap;
                    if (!diverged_at && gap > cutoff) {
                        diverged_at = t;
                    }
                    const double pi_next = m00 * pi + m01 * z;
                    z = truth.rho * z;
                    pi = pi_next;
                }

                if (diverged_at) {
                    point.status = StressPointStatus::Diverged;
                    point.divergence_horizon = diverged_at;
                    ++n_diverged;
                } else {
                    point.status = StressPointStatus::Stable;
                    ++n_stable;
                }
                if (gap_prev > 0.0 && gap_last > 0.0) {
                    point.growth_ratio = gap_last / gap_prev;
                }
                report.points.push_back(point);
            }
        }
    }

    const int counted = n_stable + n_diverged;
    report.stable_fraction = counted == 0 ? 1.0 : static_cast<double>(n_stable) / counted;
    return report;
}

} // namespace nkpolicy
