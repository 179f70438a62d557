#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nkpolicy/csv_io.hpp"
#include "nkpolicy/determinacy.hpp"
#include "nkpolicy/errors.hpp"
#include "nkpolicy/irf.hpp"
#include "nkpolicy/lre.hpp"
#include "nkpolicy/model.hpp"
#include "nkpolicy/robustness.hpp"
#include "nkpolicy/solvers.hpp"

namespace py = pybind11;
using namespace nkpolicy;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Monetary-policy rules on the new-Keynesian Phillips curve: linear "
              "rational-expectations analysis, commitment/discretion solvers, determinacy "
              "maps, impulse responses, and misspecification stress tests.";

    py::register_exception<InvalidSystem>(m, "InvalidSystemError", PyExc_ValueError);
    py::register_exception<InvalidParams>(m, "InvalidParamsError", PyExc_ValueError);
    py::register_exception<IdentificationError>(m, "IdentificationError", PyExc_ValueError);
    py::register_exception<NonInvertibleRule>(m, "NonInvertibleRuleError", PyExc_ValueError);
    py::register_exception<NotDeterminateUnderConvention>(m, "NotDeterminateError",
                                                          PyExc_ValueError);
    py::register_exception<SingularProjection>(m, "SingularProjectionError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalInconsistencyError", PyExc_RuntimeError);

    py::enum_<DeterminacyClass>(m, "DeterminacyClass")
        .value("Determinate", DeterminacyClass::Determinate)
        .value("Indeterminate", DeterminacyClass::Indeterminate)
        .value("NoBoundedSolution", DeterminacyClass::NoBoundedSolution)
        .value("BoundaryCase", DeterminacyClass::BoundaryCase);

    py::enum_<InstrumentConvention>(m, "InstrumentConvention")
        .value("Predetermined", InstrumentConvention::Predetermined)
        .value("ForwardLooking", InstrumentConvention::ForwardLooking);

    py::enum_<IrfMode>(m, "IrfMode")
        .value("PredeterminedInstrument", IrfMode::PredeterminedInstrument)
        .value("RamseyQuasiCommitment", IrfMode::RamseyQuasiCommitment)
        .value("ForwardLookingInstrument", IrfMode::ForwardLookingInstrument)
        .value("Discretion", IrfMode::Discretion);

    py::enum_<FeedbackClass>(m, "FeedbackClass")
        .value("NegativeFeedback", FeedbackClass::NegativeFeedback)
        .value("PositiveFeedback", FeedbackClass::PositiveFeedback)
        .value("Boundary", FeedbackClass::Boundary);

    py::enum_<BifurcationType>(m, "BifurcationType")
        .value("SaddleNode", BifurcationType::SaddleNode)
        .value("Flip", BifurcationType::Flip);

    py::enum_<BoundarySide>(m, "BoundarySide")
        .value("Lower", BoundarySide::Lower)
        .value("Upper", BoundarySide::Upper);

    py::enum_<IntervalKind>(m, "IntervalKind")
        .value("NegativeFeedback", IntervalKind::NegativeFeedback)
        .value("PositiveFeedback", IntervalKind::PositiveFeedback)
        .value("RamseyReducedForm", IntervalKind::RamseyReducedForm)
        .value("DiscretionReducedForm", IntervalKind::DiscretionReducedForm);

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("FPi", SweepAxis::FPi)
        .value("Beta", SweepAxis::Beta)
        .value("Kappa", SweepAxis::Kappa)
        .value("Rho", SweepAxis::Rho)
        .value("Q", SweepAxis::Q)
        .value("Epsilon", SweepAxis::Epsilon);

    py::enum_<SweepMode>(m, "SweepMode")
        .value("SimpleRule", SweepMode::SimpleRule)
        .value("Ramsey", SweepMode::Ramsey);

    py::enum_<InitialStateVariant>(m, "InitialStateVariant")
        .value("AsPrinted", InitialStateVariant::AsPrinted)
        .value("CommitmentWeighted", InitialStateVariant::CommitmentWeighted);

    py::enum_<StressPointStatus>(m, "StressPointStatus")
        .value("Stable", StressPointStatus::Stable)
        .value("Diverged", StressPointStatus::Diverged)
        .value("InvalidParams", StressPointStatus::InvalidParams);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double beta, double kappa, double rho, double sigma_eps,
                         double epsilon, double q) {
                 ModelParams p{beta, kappa, rho, sigma_eps, epsilon, q};
                 p.validate();
                 return p;
             }),
             py::arg("beta"), py::arg("kappa"), py::arg("rho"), py::arg("sigma_eps") = 1.0,
             py::arg("epsilon") = 6.0, py::arg("q") = 1.0)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("kappa", &ModelParams::kappa)
        .def_readwrite("rho", &ModelParams::rho)
        .def_readwrite("sigma_eps", &ModelParams::sigma_eps)
        .def_readwrite("epsilon", &ModelParams::epsilon)
        .def_readwrite("q", &ModelParams::q)
        .def("violations", &ModelParams::violations)
        .def("validate", &ModelParams::validate)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(beta=" + std::to_string(p.beta) +
                   ", kappa=" + std::to_string(p.kappa) + ", rho=" + std::to_string(p.rho) +
                   ", sigma_eps=" + std::to_string(p.sigma_eps) +
                   ", epsilon=" + std::to_string(p.epsilon) + ", q=" + std::to_string(p.q) + ")";
        });

    py::class_<PolicyRule>(m, "PolicyRule")
        .def(py::init([](double f_pi, double f_z, InstrumentConvention convention) {
                 PolicyRule r{f_pi, f_z, convention};
                 r.validate();
                 return r;
             }),
             py::arg("f_pi"), py::arg("f_z") = 0.0,
             py::arg("convention") = InstrumentConvention::Predetermined)
        .def_readwrite("f_pi", &PolicyRule::f_pi)
        .def_readwrite("f_z", &PolicyRule::f_z)
        .def_readwrite("convention", &PolicyRule::convention);

    py::class_<LinearRESystem>(m, "LinearRESystem")
        .def(py::init([](Eigen::MatrixXd transition, Eigen::MatrixXd impact,
                         Eigen::MatrixXd shock_loading, int n_predetermined,
                         int m_nonpredetermined) {
                 LinearRESystem s{std::move(transition), std::move(impact),
                                  std::move(shock_loading), n_predetermined,
                                  m_nonpredetermined};
                 s.validate();
                 return s;
             }),
             py::arg("transition"), py::arg("impact"), py::arg("shock_loading"),
             py::arg("n_predetermined"), py::arg("m_nonpredetermined"))
        .def_readonly("transition", &LinearRESystem::transition)
        .def_readonly("impact", &LinearRESystem::impact)
        .def_readonly("shock_loading", &LinearRESystem::shock_loading)
        .def_readonly("n_predetermined", &LinearRESystem::n_predetermined)
        .def_readonly("m_nonpredetermined", &LinearRESystem::m_nonpredetermined)
        .def("dimension", &LinearRESystem::dimension);

    py::class_<EigenReport>(m, "EigenReport")
        .def_readonly("eigenvalues", &EigenReport::eigenvalues)
        .def_readonly("n_stable", &EigenReport::n_stable)
        .def_readonly("n_unstable", &EigenReport::n_unstable)
        .def_readonly("n_unit", &EigenReport::n_unit)
        .def_readonly("unit_tol", &EigenReport::unit_tol);

    py::class_<ClosedLoopSystem>(m, "ClosedLoopSystem")
        .def_readonly("base", &ClosedLoopSystem::base)
        .def_readonly("rule", &ClosedLoopSystem::rule)
        .def_readonly("params", &ClosedLoopSystem::params)
        .def_readonly("lambda_sr", &ClosedLoopSystem::lambda_sr);

    py::class_<RamseySolution>(m, "RamseySolution")
        .def_readonly("lambda_", &RamseySolution::lambda)
        .def_readonly("f_pi_star", &RamseySolution::f_pi_star)
        .def_readonly("f_z_star", &RamseySolution::f_z_star)
        .def_readonly("x0_star", &RamseySolution::x0_star)
        .def_readonly("pi0", &RamseySolution::pi0)
        .def_readonly("gamma0", &RamseySolution::gamma0)
        .def("rule", &RamseySolution::rule);

    py::class_<StableProjection>(m, "StableProjection")
        .def_readonly("g", &StableProjection::g)
        .def_readonly("x_coefficient", &StableProjection::x_coefficient);

    py::class_<DiscretionSolution>(m, "DiscretionSolution")
        .def_readonly("rule", &DiscretionSolution::rule)
        .def_readonly("projection", &DiscretionSolution::projection);

    py::class_<FeedbackInterval>(m, "FeedbackInterval")
        .def_readonly("lower", &FeedbackInterval::lower)
        .def_readonly("upper", &FeedbackInterval::upper)
        .def_readonly("kind", &FeedbackInterval::kind)
        .def("contains", &FeedbackInterval::contains);

    py::class_<BifurcationVerdict>(m, "BifurcationVerdict")
        .def_readonly("boundary", &BifurcationVerdict::boundary)
        .def_readonly("type", &BifurcationVerdict::type)
        .def_readonly("crossing_eigenvalue", &BifurcationVerdict::crossing_eigenvalue);

    py::class_<RamseyEnvelope>(m, "RamseyEnvelope")
        .def_readonly("envelope", &RamseyEnvelope::envelope)
        .def_readonly("epsilons", &RamseyEnvelope::epsilons)
        .def_readonly("f_pi_stars", &RamseyEnvelope::f_pi_stars);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("axis_value", &SweepRow::axis_value)
        .def_readonly("f_pi", &SweepRow::f_pi)
        .def_readonly("lambda_", &SweepRow::lambda)
        .def_readonly("classification", &SweepRow::classification)
        .def_readonly("bifurcation", &SweepRow::bifurcation)
        .def_readonly("bisected_boundary", &SweepRow::bisected_boundary);

    py::class_<IRFPath>(m, "IRFPath")
        .def_readonly("horizon", &IRFPath::horizon)
        .def_readonly("pi", &IRFPath::pi)
        .def_readonly("x", &IRFPath::x)
        .def_readonly("z", &IRFPath::z)
        .def_readonly("mode", &IRFPath::mode)
        .def_readonly("seed", &IRFPath::seed);

    py::class_<StressPoint>(m, "StressPoint")
        .def_readonly("dbeta", &StressPoint::dbeta)
        .def_readonly("dkappa", &StressPoint::dkappa)
        .def_readonly("drho", &StressPoint::drho)
        .def_readonly("status", &StressPoint::status)
        .def_readonly("divergence_horizon", &StressPoint::divergence_horizon)
        .def_readonly("growth_ratio", &StressPoint::growth_ratio);

    py::class_<MisspecReport>(m, "MisspecReport")
        .def_readonly("points", &MisspecReport::points)
        .def_readonly("stable_fraction", &MisspecReport::stable_fraction)
        .def_readonly("regime", &MisspecReport::regime);

    py::class_<StressSettings>(m, "StressSettings")
        .def(py::init([](double grid_radius, int grid_steps, int horizon, double threshold) {
                 return StressSettings{grid_radius, grid_steps, horizon, threshold};
             }),
             py::arg("grid_radius") = 0.01, py::arg("grid_steps") = 3, py::arg("horizon") = 40,
             py::arg("threshold") = 10.0)
        .def_readwrite("grid_radius", &StressSettings::grid_radius)
        .def_readwrite("grid_steps", &StressSettings::grid_steps)
        .def_readwrite("horizon", &StressSettings::horizon)
        .def_readwrite("threshold", &StressSettings::threshold);

    // lre
    m.def("eigenvalues", &eigenvalues, py::arg("system"), py::arg("unit_tol") = 1e-9);
    m.def("controllability_rank", &controllability_rank, py::arg("transition"),
          py::arg("impact"));
    m.def("is_stabilizable", &is_stabilizable, py::arg("system"));
    m.def("classify_bk", &classify_bk, py::arg("report"), py::arg("m_nonpredetermined"));

    // transmission mechanism
    m.def("build_open_loop", &build_open_loop, py::arg("params"));
    m.def("close_loop", &close_loop, py::arg("params"), py::arg("rule"));
    m.def("closed_loop_inflation_eigenvalue", &closed_loop_inflation_eigenvalue,
          py::arg("params"), py::arg("f_pi"));

    // solvers
    m.def("ramsey_lambda", &ramsey_lambda, py::arg("params"));
    m.def("ramsey_rule", &ramsey_rule, py::arg("params"),
          py::arg("variant") = InitialStateVariant::AsPrinted);
    m.def("discretion_solution", &discretion_solution, py::arg("params"));
    m.def("forward_projection", &forward_projection, py::arg("params"), py::arg("f_pi"));
    m.def("anchor_inflation", &anchor_inflation, py::arg("rule"), py::arg("x0"), py::arg("z0"));
    m.def("instrument_from_target", &instrument_from_target, py::arg("rule"),
          py::arg("pi0_bar"), py::arg("z0"));
    m.def("ramsey_loss", &ramsey_loss, py::arg("path"), py::arg("params"), py::arg("horizon"));
    m.def("ramsey_loss_tail_bound", &ramsey_loss_tail_bound, py::arg("path"), py::arg("params"),
          py::arg("horizon"));

    // determinacy map
    m.def("negative_feedback_interval", &negative_feedback_interval, py::arg("params"));
    m.def("positive_feedback_set", &positive_feedback_set, py::arg("params"));
    m.def("discretion_reduced_form_interval", &discretion_reduced_form_interval);
    m.def("classify_feedback", &classify_feedback, py::arg("params"), py::arg("f_pi"),
          py::arg("tol") = 1e-9);
    m.def("bifurcation_at", &bifurcation_at, py::arg("params"), py::arg("side"));
    m.def(
        "ramsey_reduced_form_interval",
        [](const ModelParams& params, const std::vector<double>& epsilon_grid) {
            return ramsey_reduced_form_interval(params, epsilon_grid);
        },
        py::arg("params"), py::arg("epsilon_grid"));
    m.def("sweep", &sweep, py::arg("params"), py::arg("axis"), py::arg("from_"), py::arg("to"),
          py::arg("steps"), py::arg("mode"), py::arg("f_pi_fixed") = std::nullopt);

    // irf engine
    m.def("expected_irf", &expected_irf, py::arg("params"), py::arg("mode"), py::arg("rule"),
          py::arg("z0"), py::arg("x0") = std::nullopt, py::arg("horizon") = 40);
    m.def("simulate", &simulate, py::arg("params"), py::arg("mode"), py::arg("rule"),
          py::arg("z0"), py::arg("x0"), py::arg("horizon"), py::arg("seed"));
    m.def("foc_recursion_check", &foc_recursion_check, py::arg("path"), py::arg("params"));
    m.def("derive_path_seeds", &derive_path_seeds, py::arg("master_seed"), py::arg("n_paths"));

    // robustness lab
    m.def("compensating_kappa", &compensating_kappa, py::arg("f_pi"), py::arg("g"),
          py::arg("rho"), py::arg("beta"));
    m.def("compensating_kappa_flipped", &compensating_kappa_flipped, py::arg("f_pi"),
          py::arg("g"), py::arg("rho"), py::arg("beta"));
    m.def("misspecification_stress", &misspecification_stress, py::arg("params"),
          py::arg("mode"), py::arg("rule"), py::arg("x0"), py::arg("z0"), py::arg("settings"));

    // csv emitters
    m.def("format_irf_csv", &format_irf_csv, py::arg("path"));
    m.def("format_sweep_csv", &format_sweep_csv, py::arg("axis"), py::arg("rows"));
    m.def("format_stress_csv", &format_stress_csv, py::arg("report"));

    m.attr("__version__") = "0.1.0";
}
