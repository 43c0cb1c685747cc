#ifndef PIDKIT_DISTRIBUTION_HPP
#define PIDKIT_DISTRIBUTION_HPP

/*
 * Dense joint probability distributions over small discrete alphabets,
 * plus the pointwise and expected information measures built on them.
 *
 * Conventions used throughout:
 *   - axes are 0-based positions into the joint table,
 *   - predictors are 1-based (predictor i is the i-th non-target axis),
 *   - all information quantities are in bits (log base 2),
 *   - 0 log 0 = 0; pointwise quantities are only evaluated on support cells.
 */

#include <Eigen/Core>

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pidkit {

using Eigen::ArrayXd;

/// Set of axis indices (0-based) into a joint table. Kept sorted and unique.
using AxisSet = std::vector<int>;

/// A source: a nonempty set of predictor indices (1-based, sorted, unique).
class Source {
public:
    explicit Source(std::vector<int> members);
    Source(std::initializer_list<int> members);

    const std::vector<int>& members() const noexcept { return members_; }
    int size() const noexcept { return static_cast<int>(members_.size()); }
    bool contains(const Source& other) const;

    /// Display form without braces, e.g. "13" for {1,3}.
    std::string label() const;

    auto operator<=>(const Source&) const = default;

private:
    std::vector<int> members_;
};

/// Dense probability table over a tuple of finite variables, one of which
/// may be designated as the target S.
class JointDistribution {
public:
    static constexpr int kLastAxis = -1;  ///< constructor shorthand
    static constexpr int kNoTarget = -2;  ///< marginals that dropped S

    JointDistribution(std::vector<int> cardinalities, ArrayXd probs,
                      int target_axis = kLastAxis);

    /// Build from sparse (outcome, probability) rows; omitted outcomes are zero.
    static JointDistribution from_rows(
        std::vector<int> cardinalities,
        const std::vector<std::pair<std::vector<int>, double>>& rows,
        int target_axis = kLastAxis);

    int axis_count() const noexcept { return static_cast<int>(cards_.size()); }
    int target_axis() const noexcept { return target_axis_; }
    bool has_target() const noexcept { return target_axis_ >= 0; }
    int predictor_count() const noexcept {
        return axis_count() - (has_target() ? 1 : 0);
    }
    int cardinality(int axis) const { return cards_.at(axis); }
    const std::vector<int>& cardinalities() const noexcept { return cards_; }

    Eigen::Index cell_count() const noexcept { return probs_.size(); }
    const ArrayXd& probs() const noexcept { return probs_; }

    double prob(std::span<const int> outcome) const;
    double prob_at(Eigen::Index cell) const { return probs_[cell]; }

    Eigen::Index index_of(std::span<const int> outcome) const;
    std::vector<int> outcome_of(Eigen::Index cell) const;

    /// Axis of the i-th predictor (1-based i). Requires a target.
    int predictor_axis(int predictor) const;
    /// Axes of every predictor in a source, sorted.
    AxisSet source_axes(const Source& source) const;
    /// All predictor axes, sorted.
    AxisSet predictor_axes() const;

private:
    std::vector<int> cards_;
    std::vector<Eigen::Index> strides_;
    ArrayXd probs_;
    int target_axis_ = -1;
};

/// Sum out every axis not in `keep`. Axis order of the result follows the
/// original order; the target designation survives when kept.
JointDistribution marginalize(const JointDistribution& d, AxisSet keep);

/// Shannon entropy in bits.
double entropy(const JointDistribution& d);

/// Entropy of the marginal on `axes`.
double entropy_of(const JointDistribution& d, const AxisSet& axes);

/// I(a;b) = H(a) + H(b) - H(a,b). Axis sets must be disjoint and nonempty.
double mutual_information(const JointDistribution& d, const AxisSet& a,
                          const AxisSet& b);

/// I(a;b|c) = H(a,c) + H(b,c) - H(c) - H(a,b,c).
double conditional_mutual_information(const JointDistribution& d,
                                      const AxisSet& a, const AxisSet& b,
                                      const AxisSet& cond);

/// Pointwise change in surprisal of the target value when the source value
/// is observed: delta_s h(a) = log2 p(s|a) - log2 p(s). May be negative
/// (local misinformation). Requires p(s) > 0 and p(a) > 0.
double local_surprisal_delta(const JointDistribution& d, const Source& source,
                             std::span<const int> outcome);

/// Co-information of >= 2 disjoint groups of axes, in bits: the alternating
/// sum over nonempty subsets of the groups of their joint entropies. For two
/// groups this is exactly mutual_information (same evaluation path).
double coinformation(const JointDistribution& d,
                     const std::vector<AxisSet>& groups);

/// Pointwise co-information at one outcome: alternating sum of local
/// surprisals over nonempty subsets of the groups. Requires the outcome to
/// have positive probability.
double local_coinformation(const JointDistribution& d,
                           const std::vector<AxisSet>& groups,
                           std::span<const int> outcome);

/// Specific information I(S=s; A): average reduction in surprisal of target
/// value s from observing the source. Requires p(s) > 0.
double specific_information(const JointDistribution& d, const Source& source,
                            int target_value);

/// Diagnostic check of the three-variable interaction-information bounds:
///   -min[I(S;X), I(S;Y), I(X;Y)] <= I(X;Y;S) <= min[I(S;X|Y), I(S;Y|X), I(X;Y|S)]
struct CoinformationBounds {
    double interaction_information = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double lower_margin = 0.0;  ///< value - lower
    double upper_margin = 0.0;  ///< upper - value
    bool within = false;
};
CoinformationBounds coinformation_bounds_check(const JointDistribution& d);

/// Marginal tables keyed by axis set. Evaluation loops query the same few
/// marginals for every support cell; this avoids recomputing them.
class MarginalCache {
public:
    explicit MarginalCache(const JointDistribution& d) : dist_(&d) {}

    const JointDistribution& marginal(const AxisSet& axes);

    /// -log2 of the marginal probability of `outcome` projected onto `axes`.
    double local_surprisal(const AxisSet& axes, std::span<const int> outcome);

private:
    const JointDistribution* dist_;
    std::map<AxisSet, JointDistribution> cache_;
};

/// Union of sorted axis sets.
AxisSet axis_union(const AxisSet& a, const AxisSet& b);

}  // namespace pidkit

#endif
