#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nkpolicy/model.hpp"

namespace nkpolicy {

enum class IntervalKind {
    NegativeFeedback,     ///< open interval ((1-beta)/kappa, (1+beta)/kappa)
    PositiveFeedback,     ///< complement of the negative-feedback interval
    RamseyReducedForm,    ///< sampled envelope of F*pi(epsilon)
    DiscretionReducedForm ///< (-inf, -1)
};

const char* to_string(IntervalKind kind);

struct FeedbackInterval {
    double lower = 0.0; ///< -inf allowed
    double upper = 0.0; ///< +inf allowed
    IntervalKind kind = IntervalKind::NegativeFeedback;

    /// Membership under the kind's own convention: the negative-feedback
    /// interval is open, its complement keeps the endpoints.
    bool contains(double f_pi) const;
};

enum class FeedbackClass { NegativeFeedback, PositiveFeedback, Boundary };

const char* to_string(FeedbackClass cls);

enum class BifurcationType { SaddleNode, Flip };

const char* to_string(BifurcationType type);

enum class BoundarySide { Lower, Upper };

struct BifurcationVerdict {
    double boundary = 0.0;
    BifurcationType type = BifurcationType::SaddleNode;
    int crossing_eigenvalue = 0; ///< +1 for saddle-node, -1 for flip
};

/// ((1-beta)/kappa, (1+beta)/kappa): rule responses keeping both closed-loop
/// roots inside the unit circle.
FeedbackInterval negative_feedback_interval(const ModelParams& params);

/// Complement of the negative-feedback interval (endpoints included).
FeedbackInterval positive_feedback_set(const ModelParams& params);

/// (-inf, -1): where the zero-credibility reduced form -epsilon lives.
FeedbackInterval discretion_reduced_form_interval();

/// NegativeFeedback iff |lambda_sr| < 1, PositiveFeedback iff > 1, Boundary
/// within `tol` of the unit circle.
FeedbackClass classify_feedback(const ModelParams& params, double f_pi, double tol = 1e-9);

/// The qualitative change at each edge of the negative-feedback interval:
/// the lower edge is crossed at eigenvalue +1 (saddle-node), the upper at
/// -1 (flip).
BifurcationVerdict bifurcation_at(const ModelParams& params, BoundarySide side);

/// F*pi(epsilon) sampled over a preference grid, with the min/max envelope.
struct RamseyEnvelope {
    FeedbackInterval envelope; ///< kind RamseyReducedForm
    std::vector<double> epsilons;
    std::vector<double> f_pi_stars;
};

/// Samples the commitment reduced-form response over epsilon_grid (every
/// point must exceed 1). Each sample is verified to satisfy
/// 0 < (1 - kappa*F*pi)/(beta*q) < 1/(beta*q); a violation is an
/// InternalError since the root construction guarantees it.
RamseyEnvelope ramsey_reduced_form_interval(const ModelParams& params,
                                            std::span<const double> epsilon_grid);

enum class SweepAxis { FPi, Beta, Kappa, Rho, Q, Epsilon };

const char* to_string(SweepAxis axis);

enum class SweepMode {
    SimpleRule, ///< lambda = (1 - kappa*f_pi)/beta at each grid point
    Ramsey,     ///< lambda = inflation eigenvalue; f_pi = F*pi at each grid point
};

struct SweepRow {
    double axis_value = 0.0;
    double f_pi = 0.0;
    double lambda = 0.0;
    FeedbackClass classification = FeedbackClass::NegativeFeedback;
    std::optional<BifurcationType> bifurcation; ///< set on bisected boundary rows
    bool bisected_boundary = false;
};

/// Grid sweep along one axis. Rows come back in grid order. When the
/// classification flips between adjacent grid points, an extra row is
/// inserted at the |lambda| = 1 locus, bisected to 1e-6 on the axis value.
/// SimpleRule sweeps over a non-f_pi axis require `f_pi_fixed`; Ramsey mode
/// rejects the FPi axis (the solver determines f_pi).
std::vector<SweepRow> sweep(const ModelParams& base, SweepAxis axis, double from, double to,
                            int steps, SweepMode mode,
                            std::optional<double> f_pi_fixed = std::nullopt);

} // namespace nkpolicy
