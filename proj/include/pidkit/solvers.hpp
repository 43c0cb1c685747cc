#ifndef PIDKIT_SOLVERS_HPP
#define PIDKIT_SOLVERS_HPP

/*
 * The two constrained optimizers:
 *   - maximum entropy under marginal constraints (iterative proportional
 *     fitting from a uniform start),
 *   - joint mutual-information minimization over the pairwise-marginal
 *     polytope (exponentiated-gradient descent with IPF projection).
 * Both are deterministic: identical inputs give identical outputs.
 */

#include "pidkit/distribution.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace pidkit {

struct SolverOptions {
    double tolerance = 1e-10;  ///< L1 marginal residual / objective delta
    int max_iterations = 100000;
    bool verbose = false;
};

struct SolverReport {
    int iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    double objective = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
};

/// Marginals of `reference` on each axis set must be matched exactly.
class ConstraintSet {
public:
    ConstraintSet(JointDistribution reference,
                  std::vector<AxisSet> marginal_axes);

    const JointDistribution& reference() const noexcept { return reference_; }
    const std::vector<AxisSet>& marginal_axes() const noexcept {
        return marginal_axes_;
    }

private:
    JointDistribution reference_;
    std::vector<AxisSet> marginal_axes_;
};

/// Entropy-maximizing distribution over the reference's full alphabet whose
/// constrained marginals match the reference. Cells forced to zero by any
/// zero constraint marginal are frozen at zero from the start. The report's
/// objective is the entropy of the result in bits.
std::pair<JointDistribution, SolverReport> maxent_under_marginals(
    const ConstraintSet& constraints, const SolverOptions& opts = {});

struct BrojaSolution {
    JointDistribution optimum;
    SolverReport report;  ///< objective = I_Q(S; X1, X2) in bits
};

/// Minimize I_Q(S; X1, X2) over distributions preserving both (X_i, S)
/// marginals of the reference. Requires exactly two predictors.
BrojaSolution broja_minimize_joint_mi(const JointDistribution& reference,
                                      const SolverOptions& opts = {});

}  // namespace pidkit

#endif
