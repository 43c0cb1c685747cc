#include "pidkit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace pidkit {

namespace {

// Flat bucket index into the marginal table of `axes`, per joint cell.
struct MarginalMap {
    std::vector<Eigen::Index> bucket;  // per joint cell
    ArrayXd target;                    // reference marginal, flat
};

MarginalMap make_marginal_map(const JointDistribution& ref,
                              const AxisSet& axes) {
    MarginalMap m;
    JointDistribution marg = marginalize(ref, axes);
    m.target = marg.probs();

    std::vector<Eigen::Index> strides(axes.size(), 1);
    for (int i = static_cast<int>(axes.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * ref.cardinality(axes[i + 1]);

    m.bucket.resize(ref.cell_count());
    for (Eigen::Index cell = 0; cell < ref.cell_count(); ++cell) {
        auto outcome = ref.outcome_of(cell);
        Eigen::Index b = 0;
        for (std::size_t i = 0; i < axes.size(); ++i)
            b += strides[i] * outcome[axes[i]];
        m.bucket[cell] = b;
    }
    return m;
}

double max_l1_residual(const ArrayXd& q, const std::vector<MarginalMap>& maps) {
    double worst = 0.0;
    for (const MarginalMap& m : maps) {
        ArrayXd sums = ArrayXd::Zero(m.target.size());
        for (Eigen::Index cell = 0; cell < q.size(); ++cell)
            sums[m.bucket[cell]] += q[cell];
        worst = std::max(worst, (sums - m.target).abs().sum());
    }
    return worst;
}

// One IPF pass over all constraints, in order.
void ipf_cycle(ArrayXd& q, const std::vector<MarginalMap>& maps) {
    for (const MarginalMap& m : maps) {
        ArrayXd sums = ArrayXd::Zero(m.target.size());
        for (Eigen::Index cell = 0; cell < q.size(); ++cell)
            sums[m.bucket[cell]] += q[cell];
        for (Eigen::Index cell = 0; cell < q.size(); ++cell) {
            double s = sums[m.bucket[cell]];
            q[cell] = s > 0.0 ? q[cell] * m.target[m.bucket[cell]] / s : 0.0;
        }
    }
}

double entropy_bits(const ArrayXd& q) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i)
        if (q[i] > 0.0) h -= q[i] * std::log2(q[i]);
    return h;
}

}  // namespace

ConstraintSet::ConstraintSet(JointDistribution reference,
                             std::vector<AxisSet> marginal_axes)
    : reference_(std::move(reference)),
      marginal_axes_(std::move(marginal_axes)) {
    if (marginal_axes_.empty())
        throw std::invalid_argument("ConstraintSet: no marginal constraints");
    for (auto& axes : marginal_axes_) {
        if (axes.empty())
            throw std::invalid_argument("ConstraintSet: empty axis set");
        std::sort(axes.begin(), axes.end());
        axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
        if (axes.front() < 0 || axes.back() >= reference_.axis_count())
            throw std::invalid_argument("ConstraintSet: axis out of range");
    }
}

std::pair<JointDistribution, SolverReport> maxent_under_marginals(
    const ConstraintSet& constraints, const SolverOptions& opts) {
    const JointDistribution& ref = constraints.reference();

    std::vector<MarginalMap> maps;
    maps.reserve(constraints.marginal_axes().size());
    for (const AxisSet& axes : constraints.marginal_axes())
        maps.push_back(make_marginal_map(ref, axes));

    // Uniform start restricted to cells allowed by every constraint support.
    ArrayXd q = ArrayXd::Constant(ref.cell_count(),
                                  1.0 / static_cast<double>(ref.cell_count()));
    for (const MarginalMap& m : maps)
        for (Eigen::Index cell = 0; cell < q.size(); ++cell)
            if (m.target[m.bucket[cell]] == 0.0) q[cell] = 0.0;

    SolverReport report;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        ipf_cycle(q, maps);
        report.iterations = iter;
        report.residual = max_l1_residual(q, maps);
        if (opts.verbose && iter % 100 == 0)
            std::fprintf(stderr, "ipf iter %d residual %.3e\n", iter,
                         report.residual);
        if (report.residual <= opts.tolerance) {
            report.converged = true;
            break;
        }
    }
    report.objective = entropy_bits(q);

    // Guard against drift before handing the table to the validator.
    double total = q.sum();
    if (total > 0.0) q /= total;
    return {JointDistribution(ref.cardinalities(), std::move(q),
                              ref.has_target() ? ref.target_axis()
                                               : JointDistribution::kNoTarget),
            report};
}

namespace {

// I_Q(S; X1, X2) in bits for a two-predictor table, with the per-cell
// gradient d f / d q in nats written to `grad` when provided.
double joint_mi_bits(const ArrayXd& q, const std::vector<Eigen::Index>& b_xx,
                     const std::vector<Eigen::Index>& b_s,
                     Eigen::Index n_xx_buckets, Eigen::Index n_s_buckets,
                     ArrayXd* grad) {
    ArrayXd q_xx = ArrayXd::Zero(n_xx_buckets);
    ArrayXd q_s = ArrayXd::Zero(n_s_buckets);
    for (Eigen::Index cell = 0; cell < q.size(); ++cell) {
        q_xx[b_xx[cell]] += q[cell];
        q_s[b_s[cell]] += q[cell];
    }
    double mi = 0.0;
    for (Eigen::Index cell = 0; cell < q.size(); ++cell) {
        if (q[cell] > 0.0) {
            double log_ratio = std::log(q[cell]) - std::log(q_xx[b_xx[cell]]) -
                               std::log(q_s[b_s[cell]]);
            mi += q[cell] * log_ratio;
            if (grad) (*grad)[cell] = log_ratio;
        } else if (grad) {
            (*grad)[cell] = 0.0;
        }
    }
    return mi / std::numbers::ln2;
}

}  // namespace

BrojaSolution broja_minimize_joint_mi(const JointDistribution& reference,
                                      const SolverOptions& opts) {
    if (!reference.has_target() || reference.axis_count() != 3)
        throw std::invalid_argument(
            "broja_minimize_joint_mi: needs exactly two predictors and a "
            "target");

    const int t = reference.target_axis();
    const AxisSet x1{reference.predictor_axis(1)};
    const AxisSet x2{reference.predictor_axis(2)};
    std::vector<AxisSet> pairwise{axis_union(x1, {t}), axis_union(x2, {t})};

    // Feasible interior start: the pairwise maximum-entropy element.
    SolverOptions inner = opts;
    inner.tolerance = std::min(opts.tolerance, 1e-12);
    auto [start, start_report] =
        maxent_under_marginals(ConstraintSet(reference, pairwise), inner);

    std::vector<MarginalMap> maps;
    for (const AxisSet& axes : pairwise)
        maps.push_back(make_marginal_map(reference, axes));

    // Bucket maps for the objective's (X1,X2) and S marginals.
    auto xx_map = make_marginal_map(reference, axis_union(x1, x2));
    auto s_map = make_marginal_map(reference, {t});

    ArrayXd q = start.probs();
    ArrayXd grad(q.size());
    double obj = joint_mi_bits(q, xx_map.bucket, s_map.bucket,
                               xx_map.target.size(), s_map.target.size(),
                               &grad);

    SolverReport report;
    double eta = 1.0;
    int tiny_delta_streak = 0;
    const int projection_cycles = 400;

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        report.iterations = iter;

        ArrayXd cand = q;
        for (Eigen::Index cell = 0; cell < cand.size(); ++cell) {
            if (cand[cell] <= 0.0) continue;
            double factor = std::exp(
                std::clamp(-eta * grad[cell], -30.0, 30.0));
            cand[cell] *= factor;
        }
        for (int c = 0; c < projection_cycles; ++c) {
            ipf_cycle(cand, maps);
            if (max_l1_residual(cand, maps) <= 1e-14) break;
        }

        ArrayXd cand_grad(cand.size());
        double cand_obj =
            joint_mi_bits(cand, xx_map.bucket, s_map.bucket,
                          xx_map.target.size(), s_map.target.size(),
                          &cand_grad);

        if (cand_obj <= obj + 1e-15) {
            double delta = obj - cand_obj;
            q = std::move(cand);
            grad = std::move(cand_grad);
            obj = cand_obj;
            tiny_delta_streak = delta <= opts.tolerance ? tiny_delta_streak + 1
                                                        : 0;
            if (tiny_delta_streak >= 3) {
                report.converged = true;
                break;
            }
            eta = std::min(eta * 1.2, 8.0);
        } else {
            eta *= 0.5;
            if (eta < 1e-9) {
                // No descent direction at numerical precision.
                report.converged = true;
                break;
            }
        }
        if (opts.verbose && iter % 50 == 0)
            std::fprintf(stderr, "broja iter %d obj %.12f eta %.3e\n", iter,
                         obj, eta);
    }

    report.objective = obj;
    report.residual = max_l1_residual(q, maps);
    double total = q.sum();
    if (total > 0.0) q /= total;
    return {JointDistribution(reference.cardinalities(), std::move(q),
                              reference.target_axis()),
            report};
}

}  // namespace pidkit
