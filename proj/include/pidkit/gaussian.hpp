#ifndef PIDKIT_GAUSSIAN_HPP
#define PIDKIT_GAUSSIAN_HPP

/*
 * PID for the unit-variance trivariate Gaussian family: closed-form minimum
 * mutual information, and Monte-Carlo common change in surprisal. For a
 * jointly Gaussian system the pairwise-moment maximum-entropy surrogate is
 * the system itself, so pointwise terms are evaluated under the original
 * density.
 */

#include "pidkit/lattice.hpp"
#include "pidkit/measures.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace pidkit {

/// Correlations of the unit-variance system (X1, X2, S).
struct GaussianSystem {
    double a = 0.0;  ///< Corr(X1, S)
    double c = 0.0;  ///< Corr(X2, S)
    double b = 0.0;  ///< Corr(X1, X2)
};

/// Correlation matrix in (X1, X2, S) order.
Eigen::Matrix3d correlation_matrix(const GaussianSystem& sys);

/// Smallest eigenvalue >= -tol and all |corr| <= 1.
bool gaussian_system_valid(const GaussianSystem& sys, double tol = 1e-12);

/// I(S; X) = -1/2 log2 (1 - r^2) bits. |r| = 1 is rejected (infinite MI).
double gaussian_mi(double r);

/// Closed-form I(S; X1, X2) in bits.
double gaussian_joint_mi(const GaussianSystem& sys);

struct MCOptions {
    std::int64_t sample_count = 1000000;
    std::uint64_t seed = 0;
    bool report_standard_error = true;
};

/// Atom values in lattice node order {1}{2}, {1}, {2}, {12}.
struct GaussianPIDResult {
    PIDResult pid;
    std::array<double, 4> standard_error{};  ///< zero for closed-form atoms
    double closed_form_joint_mi = 0.0;

    double atom(const std::string& name) const { return pid.atom(name); }
};

/// Closed-form PID with redundancy = min of the single-predictor MIs.
GaussianPIDResult gaussian_immi_pid(const GaussianSystem& sys);

/// Monte-Carlo PID with redundancy = filtered pointwise common change in
/// surprisal; the other node values are unfiltered pointwise averages from
/// the same sample, so atom sums can be checked against the closed form.
GaussianPIDResult gaussian_iccs_pid(const GaussianSystem& sys,
                                    const MCOptions& mc = {});

struct GaussianSweepPoint {
    double b = 0.0;
    std::array<double, 4> immi_atoms{};  ///< red, unique1, unique2, synergy
    std::array<double, 4> iccs_atoms{};
    std::array<double, 4> iccs_se{};
    double mi1 = 0.0, mi2 = 0.0, mi_joint = 0.0;
};

struct GaussianSweep {
    std::vector<GaussianSweepPoint> points;
    std::vector<double> skipped_b;  ///< infeasible grid values
};

/// One PID pair per feasible b; each grid point draws from an independent
/// generator stream derived from (seed, point index).
GaussianSweep gaussian_sweep(double a, double c,
                             const std::vector<double>& b_grid,
                             const MCOptions& mc = {});

}  // namespace pidkit

#endif
