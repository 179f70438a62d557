#include "nkpolicy/lre.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nkpolicy {

namespace {

// Numerical-rank convention shared by every rank test in this module.
constexpr double kRankTolFactor = 1e-10;

template <typename Matrix>
int numerical_rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) {
        return 0;
    }
    const double tol = kRankTolFactor * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) {
            ++rank;
        }
    }
    return rank;
}

} // namespace

void LinearRESystem::validate() const {
    if (transition.rows() == 0 || transition.rows() != transition.cols()) {
        throw InvalidSystem("transition matrix must be square with dimension >= 1");
    }
    if (impact.rows() != transition.rows()) {
        throw InvalidSystem("impact matrix must have the same row count as the transition");
    }
    if (shock_loading.size() > 0 && shock_loading.rows() != transition.rows()) {
        throw InvalidSystem("shock loading must have the same row count as the transition");
    }
    if (!transition.allFinite() || !impact.allFinite() ||
        (shock_loading.size() > 0 && !shock_loading.allFinite())) {
        throw InvalidSystem("system matrices must be finite");
    }
    if (n_predetermined < 0 || m_nonpredetermined < 0 ||
        n_predetermined + m_nonpredetermined != dimension()) {
        throw InvalidSystem("predetermined/non-predetermined counts must be non-negative and "
                            "sum to the system dimension");
    }
}

const char* to_string(DeterminacyClass cls) {
    switch (cls) {
        case DeterminacyClass::Determinate: return "determinate";
        case DeterminacyClass::Indeterminate: return "indeterminate";
        case DeterminacyClass::NoBoundedSolution: return "no-bounded-solution";
        case DeterminacyClass::BoundaryCase: return "boundary-case";
    }
    return "unknown";
}

EigenReport eigenvalues(const LinearRESystem& system, double unit_tol) {
    system.validate();
    if (!(unit_tol > 0.0)) {
        throw InvalidParams("unit_tol must be positive");
    }

    EigenReport report;
    report.unit_tol = unit_tol;

    auto census = [&](const std::complex<double>& ev) {
        report.eigenvalues.push_back(ev);
        const double modulus = std::abs(ev);
        if (std::abs(modulus - 1.0) <= unit_tol) {
            ++report.n_unit;
        } else if (modulus < 1.0) {
            ++report.n_stable;
        } else {
            ++report.n_unstable;
        }
    };

    const Eigen::MatrixXd& a = system.transition;
    const Eigen::Index dim = a.rows();
    report.eigenvalues.reserve(static_cast<std::size_t>(dim));

    // Exactly triangular input reads its spectrum off the diagonal, so
    // block-triangular systems report diagonal-block spectra exactly instead
    // of up to an iteration's round-off.
    bool triangular = true;
    for (Eigen::Index i = 0; i < dim && triangular; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (a(i, j) != 0.0) {
                triangular = false;
                break;
            }
        }
    }
    if (triangular) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            census(std::complex<double>(a(i, i), 0.0));
        }
        return report;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw InternalError("eigenvalue iteration failed to converge");
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        census(solver.eigenvalues()(i));
    }
    return report;
}

int controllability_rank(const Eigen::MatrixXd& transition, const Eigen::MatrixXd& impact) {
    if (transition.rows() == 0 || transition.rows() != transition.cols()) {
        throw InvalidSystem("transition matrix must be square with dimension >= 1");
    }
    if (impact.rows() != transition.rows()) {
        throw InvalidSystem("impact matrix rows must match the transition dimension");
    }
    if (!transition.allFinite() || !impact.allFinite()) {
        throw InvalidSystem("system matrices must be finite");
    }
    if (impact.cols() == 0) {
        return 0;
    }

    const Eigen::Index dim = transition.rows();
    const Eigen::Index n_inputs = impact.cols();
    Eigen::MatrixXd ctrb(dim, dim * n_inputs);
    Eigen::MatrixXd block = impact;
    for (Eigen::Index k = 0; k < dim; ++k) {
        ctrb.middleCols(k * n_inputs, n_inputs) = block;
        if (k + 1 < dim) {
            block = transition * block;
        }
    }
    return numerical_rank(ctrb);
}

bool is_stabilizable(const LinearRESystem& system) {
    system.validate();

    const Eigen::Index dim = system.transition.rows();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(system.transition, false);
    if (solver.info() != Eigen::Success) {
        throw InternalError("eigenvalue iteration failed to converge");
    }

    const Eigen::MatrixXcd a = system.transition.cast<std::complex<double>>();
    const Eigen::MatrixXcd b = system.impact.cast<std::complex<double>>();

    for (Eigen::Index i = 0; i < dim; ++i) {
        const std::complex<double> lambda = solver.eigenvalues()(i);
        if (std::abs(lambda) < 1.0) {
            continue; // stable modes need no control
        }
        Eigen::MatrixXcd pbh(dim, dim + b.cols());
        pbh.leftCols(dim) = a - lambda * Eigen::MatrixXcd::Identity(dim, dim);
        if (b.cols() > 0) {
            pbh.rightCols(b.cols()) = b;
        }
        if (numerical_rank(pbh) < dim) {
            return false;
        }
    }
    return true;
}

DeterminacyClass classify_bk(const EigenReport& report, int m_nonpredetermined) {
    const int dim = static_cast<int>(report.eigenvalues.size());
    if (m_nonpredetermined < 0 || m_nonpredetermined > dim) {
        throw InvalidSystem("non-predetermined count must lie in [0, system dimension]");
    }
    if (report.n_unit > 0) {
        return DeterminacyClass::BoundaryCase;
    }
    if (report.n_unstable == m_nonpredetermined) {
        return DeterminacyClass::Determinate;
    }
    return report.n_unstable > m_nonpredetermined ? DeterminacyClass::NoBoundedSolution
                                                  : DeterminacyClass::Indeterminate;
}

} // namespace nkpolicy
