#include "nkpolicy/model.hpp"

#include <cmath>
#include <sstream>

namespace nkpolicy {

namespace {

bool finite(double v) { return std::isfinite(v); }

std::string join(const std::vector<std::string>& parts) {
    std::ostringstream out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out << "; ";
        }
        out << parts[i];
    }
    return out.str();
}

} // namespace

std::vector<std::string> ModelParams::violations() const {
    std::vector<std::string> bad;
    if (!finite(beta) || beta <= 0.0 || beta >= 1.0) {
        bad.push_back("beta must lie in (0,1)");
    }
    if (!finite(kappa) || kappa <= 0.0) {
        bad.push_back("kappa must be positive");
    }
    if (!finite(rho) || rho <= 0.0 || rho >= 1.0) {
        bad.push_back("rho must lie in (0,1)");
    }
    if (!finite(sigma_eps) || sigma_eps < 0.0) {
        bad.push_back("sigma_eps must be non-negative");
    }
    if (!finite(epsilon) || epsilon <= 1.0) {
        bad.push_back("epsilon must exceed 1");
    }
    if (!finite(q) || q <= 0.0 || q > 1.0) {
        bad.push_back("q must lie in (0,1]");
    }
    return bad;
}

void ModelParams::validate() const {
    const auto bad = violations();
    if (!bad.empty()) {
        throw InvalidParams(join(bad));
    }
}

const char* to_string(InstrumentConvention convention) {
    switch (convention) {
        case InstrumentConvention::Predetermined: return "predetermined";
        case InstrumentConvention::ForwardLooking: return "forward-looking";
    }
    return "unknown";
}

void PolicyRule::validate() const {
    if (!finite(f_pi) || !finite(f_z)) {
        throw InvalidParams("rule coefficients must be finite");
    }
    if (convention == InstrumentConvention::ForwardLooking && f_z != 0.0) {
        throw IdentificationError(
            "a forward-looking instrument requires f_z = 0: the solution lives on the "
            "one-dimensional shock subspace, so responding to both targets is not identified");
    }
}

LinearRESystem build_open_loop(const ModelParams& params) {
    params.validate();

    LinearRESystem sys;
    sys.transition.resize(2, 2);
    sys.transition << 1.0 / params.beta, -1.0 / params.beta, //
        0.0, params.rho;
    sys.impact.resize(2, 1);
    sys.impact << -params.kappa / params.beta, 0.0;
    sys.shock_loading.resize(2, 1);
    sys.shock_loading << 0.0, 1.0;
    sys.n_predetermined = 1;    // z
    sys.m_nonpredetermined = 1; // pi
    return sys;
}

ClosedLoopSystem close_loop(const ModelParams& params, const PolicyRule& rule) {
    params.validate();
    rule.validate();

    const double lambda_sr = (1.0 - params.kappa * rule.f_pi) / params.beta;

    LinearRESystem sys;
    sys.transition.resize(2, 2);
    sys.transition << lambda_sr, (-1.0 - params.kappa * rule.f_z) / params.beta, //
        0.0, params.rho;
    sys.impact.resize(2, 0); // the instrument is internal once the loop is closed
    sys.shock_loading.resize(2, 1);
    sys.shock_loading << 0.0, 1.0;

    if (rule.convention == InstrumentConvention::ForwardLooking) {
        sys.n_predetermined = 1;
        sys.m_nonpredetermined = 1;
    } else {
        // Rule inversion anchors initial inflation on the given x0, so both
        // state variables carry initial conditions and determinacy requires
        // two stable roots.
        sys.n_predetermined = 2;
        sys.m_nonpredetermined = 0;
    }

    return ClosedLoopSystem{std::move(sys), rule, params, lambda_sr};
}

double closed_loop_inflation_eigenvalue(const ModelParams& params, double f_pi) {
    params.validate();
    return (1.0 - params.kappa * f_pi) / params.beta;
}

} // namespace nkpolicy
