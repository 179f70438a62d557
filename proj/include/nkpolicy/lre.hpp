#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nkpolicy/errors.hpp"

namespace nkpolicy {

/// A small linear rational-expectations system
///
///   [ E_t y_{t+1} ] = transition * y_t + impact * u_t + shock_loading * e_{t+1}
///
/// where the state vector stacks n_predetermined backward-looking variables
/// and m_nonpredetermined forward-looking (jump) variables. Only the counts
/// matter for classification; the row layout follows whichever convention the
/// builder used.
struct LinearRESystem {
    Eigen::MatrixXd transition;    ///< square, (n+m) x (n+m)
    Eigen::MatrixXd impact;        ///< (n+m) x n_instruments (may have zero columns)
    Eigen::MatrixXd shock_loading; ///< (n+m) x n_shocks
    int n_predetermined = 0;
    int m_nonpredetermined = 0;

    int dimension() const { return static_cast<int>(transition.rows()); }

    /// Throws InvalidSystem if any structural invariant fails.
    void validate() const;
};

/// Unit-circle census of a transition matrix's spectrum.
struct EigenReport {
    std::vector<std::complex<double>> eigenvalues;
    int n_stable = 0;   ///< modulus < 1 - unit_tol
    int n_unstable = 0; ///< modulus > 1 + unit_tol
    int n_unit = 0;     ///< modulus within unit_tol of 1
    double unit_tol = 0.0;
};

enum class DeterminacyClass {
    Determinate,       ///< unique bounded solution
    Indeterminate,     ///< an infinity of bounded solutions
    NoBoundedSolution, ///< no bounded solution
    BoundaryCase,      ///< a root sits on the unit circle; classification withheld
};

const char* to_string(DeterminacyClass cls);

/// Full spectrum of the transition matrix with stable/unstable/unit counts.
/// For block upper-triangular matrices the result equals the union of the
/// diagonal blocks' spectra (exact for already-triangular input).
EigenReport eigenvalues(const LinearRESystem& system, double unit_tol = 1e-9);

/// Rank of [B, AB, A^2 B, ..., A^{d-1} B]. Singular values below
/// 1e-10 * sigma_max count as zero.
int controllability_rank(const Eigen::MatrixXd& transition, const Eigen::MatrixXd& impact);

/// PBH test: true iff every eigenvalue with modulus >= 1 is controllable,
/// i.e. rank [A - lambda I, B] is full for each such lambda.
bool is_stabilizable(const LinearRESystem& system);

/// Root-counting determinacy classification. The counting convention:
/// a unique bounded solution exists iff the number of unstable roots equals
/// the number of non-predetermined variables; more unstable roots than jump
/// variables leaves no bounded solution; fewer leaves an infinity of them.
/// (Some textbook statements print the inequality symbols the other way
/// around; the counts above are the operative rule.) Any unit-circle root
/// makes the case a boundary and classification is withheld.
DeterminacyClass classify_bk(const EigenReport& report, int m_nonpredetermined);

} // namespace nkpolicy
