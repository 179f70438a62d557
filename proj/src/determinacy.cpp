#include "nkpolicy/determinacy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nkpolicy/solvers.hpp"

namespace nkpolicy {

namespace {

constexpr double kBoundaryBisectTol = 1e-6;

ModelParams with_axis(const ModelParams& base, SweepAxis axis, double value) {
    ModelParams p = base;
    switch (axis) {
        case SweepAxis::FPi: break; // rule parameter, not a structural one
        case SweepAxis::Beta: p.beta = value; break;
        case SweepAxis::Kappa: p.kappa = value; break;
        case SweepAxis::Rho: p.rho = value; break;
        case SweepAxis::Q: p.q = value; break;
        case SweepAxis::Epsilon: p.epsilon = value; break;
    }
    return p;
}

} // namespace

const char* to_string(IntervalKind kind) {
    switch (kind) {
        case IntervalKind::NegativeFeedback: return "negative-feedback";
        case IntervalKind::PositiveFeedback: return "positive-feedback";
        case IntervalKind::RamseyReducedForm: return "ramsey-reduced-form";
        case IntervalKind::DiscretionReducedForm: return "discretion-reduced-form";
    }
    return "unknown";
}

const char* to_string(FeedbackClass cls) {
    switch (cls) {
        case FeedbackClass::NegativeFeedback: return "negative-feedback";
        case FeedbackClass::PositiveFeedback: return "positive-feedback";
        case FeedbackClass::Boundary: return "boundary";
    }
    return "unknown";
}

const char* to_string(BifurcationType type) {
    switch (type) {
        case BifurcationType::SaddleNode: return "saddle-node";
        case BifurcationType::Flip: return "flip";
    }
    return "unknown";
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::FPi: return "f_pi";
        case SweepAxis::Beta: return "beta";
        case SweepAxis::Kappa: return "kappa";
        case SweepAxis::Rho: return "rho";
        case SweepAxis::Q: return "q";
        case SweepAxis::Epsilon: return "epsilon";
    }
    return "unknown";
}

bool FeedbackInterval::contains(double f_pi) const {
    switch (kind) {
        case IntervalKind::NegativeFeedback:
        case IntervalKind::RamseyReducedForm:
        case IntervalKind::DiscretionReducedForm:
            return f_pi > lower && f_pi < upper;
        case IntervalKind::PositiveFeedback:
            return f_pi <= lower || f_pi >= upper;
    }
    return false;
}

FeedbackInterval negative_feedback_interval(const ModelParams& params) {
    params.validate();
    return FeedbackInterval{(1.0 - params.beta) / params.kappa,
                            (1.0 + params.beta) / params.kappa,
                            IntervalKind::NegativeFeedback};
}

FeedbackInterval positive_feedback_set(const ModelParams& params) {
    FeedbackInterval set = negative_feedback_interval(params);
    set.kind = IntervalKind::PositiveFeedback;
    return set;
}

FeedbackInterval discretion_reduced_form_interval() {
    return FeedbackInterval{-std::numeric_limits<double>::infinity(), -1.0,
                            IntervalKind::DiscretionReducedForm};
}

FeedbackClass classify_feedback(const ModelParams& params, double f_pi, double tol) {
    const double lambda = closed_loop_inflation_eigenvalue(params, f_pi);
    const double distance = std::abs(lambda) - 1.0;
    if (std::abs(distance) <= tol) {
        return FeedbackClass::Boundary;
    }
    return distance < 0.0 ? FeedbackClass::NegativeFeedback : FeedbackClass::PositiveFeedback;
}

BifurcationVerdict bifurcation_at(const ModelParams& params, BoundarySide side) {
    const FeedbackInterval interval = negative_feedback_interval(params);
    if (side == BoundarySide::Lower) {
        // crossing downward through (1-beta)/kappa pushes the root through +1
        return BifurcationVerdict{interval.lower, BifurcationType::SaddleNode, +1};
    }
    // crossing upward through (1+beta)/kappa pushes the root through -1
    return BifurcationVerdict{interval.upper, BifurcationType::Flip, -1};
}

RamseyEnvelope ramsey_reduced_form_interval(const ModelParams& params,
                                            std::span<const double> epsilon_grid) {
    params.validate();
    if (epsilon_grid.empty()) {
        throw InvalidParams("epsilon grid must be non-empty");
    }

    RamseyEnvelope env;
    env.envelope.kind = IntervalKind::RamseyReducedForm;
    env.envelope.lower = std::numeric_limits<double>::infinity();
    env.envelope.upper = -std::numeric_limits<double>::infinity();
    env.epsilons.reserve(epsilon_grid.size());
    env.f_pi_stars.reserve(epsilon_grid.size());

    const double bq = params.beta * params.q;
    for (double eps : epsilon_grid) {
        if (!(eps > 1.0)) {
            std::ostringstream msg;
            msg << "epsilon grid point " << eps << " must exceed 1";
            throw InvalidParams(msg.str());
        }
        ModelParams point = params;
        point.epsilon = eps;
        const RamseySolution sol = ramsey_rule(point);

        // Membership in the credibility-weighted determinacy set: the root
        // construction guarantees 0 < (1 - kappa*F*pi)/(beta*q) < 1/(beta*q).
        const double weighted = (1.0 - params.kappa * sol.f_pi_star) / bq;
        if (!(weighted > 0.0 && weighted < 1.0 / bq)) {
            std::ostringstream msg;
            msg << "reduced-form sample F*pi = " << sol.f_pi_star
                << " left the credibility-weighted determinacy set";
            throw InternalError(msg.str());
        }

        env.epsilons.push_back(eps);
        env.f_pi_stars.push_back(sol.f_pi_star);
        env.envelope.lower = std::min(env.envelope.lower, sol.f_pi_star);
        env.envelope.upper = std::max(env.envelope.upper, sol.f_pi_star);
    }
    return env;
}

namespace {

struct GridPoint {
    double f_pi;
    double lambda;
    FeedbackClass classification;
};

GridPoint evaluate_grid_point(const ModelParams& base, SweepAxis axis, double value,
                              SweepMode mode, const std::optional<double>& f_pi_fixed) {
    const ModelParams point = with_axis(base, axis, value);
    const auto bad = point.violations();
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "sweep leaves the parameter space at " << to_string(axis) << " = " << value;
        throw InvalidParams(msg.str());
    }

    GridPoint g{};
    if (mode == SweepMode::Ramsey) {
        g.lambda = ramsey_lambda(point);
        g.f_pi = (1.0 - point.beta * point.q * g.lambda) / point.kappa;
    } else {
        g.f_pi = axis == SweepAxis::FPi ? value : *f_pi_fixed;
        g.lambda = closed_loop_inflation_eigenvalue(point, g.f_pi);
    }
    g.classification = classify_feedback(point, g.f_pi);
    return g;
}

} // namespace

std::vector<SweepRow> sweep(const ModelParams& base, SweepAxis axis, double from, double to,
                            int steps, SweepMode mode, std::optional<double> f_pi_fixed) {
    base.validate();
    if (steps < 2) {
        throw InvalidParams("sweep needs at least 2 grid points");
    }
    if (!(from < to)) {
        throw InvalidParams("sweep range must satisfy from < to");
    }
    if (mode == SweepMode::Ramsey && axis == SweepAxis::FPi) {
        throw InvalidParams("the commitment solver determines f_pi; sweep a structural axis");
    }
    if (mode == SweepMode::SimpleRule && axis != SweepAxis::FPi && !f_pi_fixed) {
        throw InvalidParams("simple-rule sweeps over a structural axis need a fixed f_pi");
    }

    const double step = (to - from) / (steps - 1);
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));

    auto emit = [&](double value, const GridPoint& g) {
        rows.push_back(SweepRow{value, g.f_pi, g.lambda, g.classification, std::nullopt, false});
    };

    GridPoint previous{};
    double previous_value = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double value = i + 1 == steps ? to : from + i * step;
        const GridPoint current = evaluate_grid_point(base, axis, value, mode, f_pi_fixed);

        // A classification flip between adjacent grid points pins a |lambda| = 1
        // crossing inside the cell; bisect the axis value down to the locus.
        if (i > 0 && current.classification != previous.classification &&
            current.classification != FeedbackClass::Boundary &&
            previous.classification != FeedbackClass::Boundary) {
            double lo = previous_value;
            double hi = value;
            double lo_dist = std::abs(previous.lambda) - 1.0;
            while (hi - lo > kBoundaryBisectTol) {
                const double mid = 0.5 * (lo + hi);
                const GridPoint probe = evaluate_grid_point(base, axis, mid, mode, f_pi_fixed);
                const double mid_dist = std::abs(probe.lambda) - 1.0;
                if ((mid_dist <= 0.0) == (lo_dist <= 0.0)) {
                    lo = mid;
                    lo_dist = mid_dist;
                } else {
                    hi = mid;
                }
            }
            const double boundary_value = 0.5 * (lo + hi);
            const GridPoint at_boundary =
                evaluate_grid_point(base, axis, boundary_value, mode, f_pi_fixed);
            SweepRow row{boundary_value, at_boundary.f_pi, at_boundary.lambda,
                         FeedbackClass::Boundary, std::nullopt, true};
            row.bifurcation = at_boundary.lambda > 0.0 ? BifurcationType::SaddleNode
                                                       : BifurcationType::Flip;
            rows.push_back(row);
        }

        emit(value, current);
        previous = current;
        previous_value = value;
    }
    return rows;
}

} // namespace nkpolicy
