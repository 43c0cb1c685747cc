#include "pidkit/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace pidkit {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kNegativeClamp = -1e-12;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

AxisSet normalized_axes(AxisSet axes, int axis_count, const char* what) {
    std::sort(axes.begin(), axes.end());
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
    require(!axes.empty(), std::string(what) + ": empty axis set");
    require(axes.front() >= 0 && axes.back() < axis_count,
            std::string(what) + ": axis out of range");
    return axes;
}

bool disjoint(const AxisSet& a, const AxisSet& b) {
    for (int x : a)
        if (std::binary_search(b.begin(), b.end(), x)) return false;
    return true;
}

}  // namespace

Source::Source(std::vector<int> members) : members_(std::move(members)) {
    require(!members_.empty(), "Source: empty member set");
    std::sort(members_.begin(), members_.end());
    require(std::adjacent_find(members_.begin(), members_.end()) ==
                members_.end(),
            "Source: duplicate member");
    require(members_.front() >= 1, "Source: members are 1-based");
}

Source::Source(std::initializer_list<int> members)
    : Source(std::vector<int>(members)) {}

bool Source::contains(const Source& other) const {
    return std::includes(members_.begin(), members_.end(),
                         other.members_.begin(), other.members_.end());
}

std::string Source::label() const {
    std::string out;
    for (int m : members_) out += std::to_string(m);
    return out;
}

JointDistribution::JointDistribution(std::vector<int> cardinalities,
                                     ArrayXd probs, int target_axis)
    : cards_(std::move(cardinalities)),
      probs_(std::move(probs)),
      target_axis_(target_axis) {
    require(!cards_.empty(), "JointDistribution: no axes");
    Eigen::Index cells = 1;
    for (int c : cards_) {
        require(c >= 1, "JointDistribution: cardinality must be >= 1");
        cells *= c;
    }
    require(probs_.size() == cells,
            "JointDistribution: table size does not match cardinalities");
    if (target_axis_ == kLastAxis)
        target_axis_ = axis_count() - 1;
    else if (target_axis_ == kNoTarget)
        target_axis_ = -1;
    require(target_axis_ >= -1 && target_axis_ < axis_count(),
            "JointDistribution: target axis out of range");

    double sum = 0.0;
    for (Eigen::Index i = 0; i < probs_.size(); ++i) {
        double& p = probs_[i];
        if (p < 0.0) {
            require(p >= kNegativeClamp,
                    "JointDistribution: negative probability entry");
            p = 0.0;
        }
        sum += p;
    }
    require(std::abs(sum - 1.0) <= kSumTolerance,
            "JointDistribution: probabilities sum to " + std::to_string(sum) +
                ", not 1");

    strides_.assign(cards_.size(), 1);
    for (int a = axis_count() - 2; a >= 0; --a)
        strides_[a] = strides_[a + 1] * cards_[a + 1];
}

JointDistribution JointDistribution::from_rows(
    std::vector<int> cardinalities,
    const std::vector<std::pair<std::vector<int>, double>>& rows,
    int target_axis) {
    Eigen::Index cells = 1;
    for (int c : cardinalities) cells *= std::max(c, 1);
    ArrayXd table = ArrayXd::Zero(cells);
    // Temporary distribution used only for index arithmetic.
    std::vector<Eigen::Index> strides(cardinalities.size(), 1);
    for (int a = static_cast<int>(cardinalities.size()) - 2; a >= 0; --a)
        strides[a] = strides[a + 1] * cardinalities[a + 1];
    for (const auto& [outcome, p] : rows) {
        require(outcome.size() == cardinalities.size(),
                "from_rows: outcome arity mismatch");
        Eigen::Index idx = 0;
        for (std::size_t a = 0; a < outcome.size(); ++a) {
            require(outcome[a] >= 0 && outcome[a] < cardinalities[a],
                    "from_rows: outcome value out of range");
            idx += strides[a] * outcome[a];
        }
        table[idx] += p;
    }
    return JointDistribution(std::move(cardinalities), std::move(table),
                             target_axis);
}

double JointDistribution::prob(std::span<const int> outcome) const {
    return probs_[index_of(outcome)];
}

Eigen::Index JointDistribution::index_of(std::span<const int> outcome) const {
    require(static_cast<int>(outcome.size()) == axis_count(),
            "index_of: outcome arity mismatch");
    Eigen::Index idx = 0;
    for (int a = 0; a < axis_count(); ++a) {
        require(outcome[a] >= 0 && outcome[a] < cards_[a],
                "index_of: outcome value out of range");
        idx += strides_[a] * outcome[a];
    }
    return idx;
}

std::vector<int> JointDistribution::outcome_of(Eigen::Index cell) const {
    std::vector<int> out(cards_.size());
    for (int a = 0; a < axis_count(); ++a) {
        out[a] = static_cast<int>(cell / strides_[a]);
        cell %= strides_[a];
    }
    return out;
}

int JointDistribution::predictor_axis(int predictor) const {
    require(has_target(), "predictor_axis: distribution has no target");
    require(predictor >= 1 && predictor <= predictor_count(),
            "predictor_axis: index out of range");
    int seen = 0;
    for (int a = 0; a < axis_count(); ++a) {
        if (a == target_axis_) continue;
        if (++seen == predictor) return a;
    }
    throw std::logic_error("predictor_axis: unreachable");
}

AxisSet JointDistribution::source_axes(const Source& source) const {
    AxisSet axes;
    axes.reserve(source.members().size());
    for (int m : source.members()) axes.push_back(predictor_axis(m));
    std::sort(axes.begin(), axes.end());
    return axes;
}

AxisSet JointDistribution::predictor_axes() const {
    AxisSet axes;
    for (int a = 0; a < axis_count(); ++a)
        if (a != target_axis_) axes.push_back(a);
    return axes;
}

JointDistribution marginalize(const JointDistribution& d, AxisSet keep) {
    keep = normalized_axes(std::move(keep), d.axis_count(), "marginalize");

    std::vector<int> out_cards;
    out_cards.reserve(keep.size());
    int out_target = JointDistribution::kNoTarget;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        out_cards.push_back(d.cardinality(keep[i]));
        if (d.has_target() && keep[i] == d.target_axis())
            out_target = static_cast<int>(i);
    }

    std::vector<Eigen::Index> out_strides(keep.size(), 1);
    for (int i = static_cast<int>(keep.size()) - 2; i >= 0; --i)
        out_strides[i] = out_strides[i + 1] * out_cards[i + 1];

    Eigen::Index out_cells = 1;
    for (int c : out_cards) out_cells *= c;
    ArrayXd table = ArrayXd::Zero(out_cells);

    for (Eigen::Index cell = 0; cell < d.cell_count(); ++cell) {
        double p = d.prob_at(cell);
        if (p != 0.0) {
            Eigen::Index out_idx = 0;
            auto full = d.outcome_of(cell);
            for (std::size_t i = 0; i < keep.size(); ++i)
                out_idx += out_strides[i] * full[keep[i]];
            table[out_idx] += p;
        }
    }

    return JointDistribution(std::move(out_cards), std::move(table),
                             out_target);
}

double entropy(const JointDistribution& d) {
    double h = 0.0;
    const ArrayXd& p = d.probs();
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
    return h;
}

double entropy_of(const JointDistribution& d, const AxisSet& axes) {
    return entropy(marginalize(d, axes));
}

double mutual_information(const JointDistribution& d, const AxisSet& a,
                          const AxisSet& b) {
    auto an = normalized_axes(a, d.axis_count(), "mutual_information");
    auto bn = normalized_axes(b, d.axis_count(), "mutual_information");
    require(disjoint(an, bn), "mutual_information: axis sets overlap");
    return entropy_of(d, an) + entropy_of(d, bn) -
           entropy_of(d, axis_union(an, bn));
}

double conditional_mutual_information(const JointDistribution& d,
                                      const AxisSet& a, const AxisSet& b,
                                      const AxisSet& cond) {
    auto an = normalized_axes(a, d.axis_count(), "cmi");
    auto bn = normalized_axes(b, d.axis_count(), "cmi");
    auto cn = normalized_axes(cond, d.axis_count(), "cmi");
    require(disjoint(an, bn) && disjoint(an, cn) && disjoint(bn, cn),
            "cmi: axis sets overlap");
    return entropy_of(d, axis_union(an, cn)) +
           entropy_of(d, axis_union(bn, cn)) - entropy_of(d, cn) -
           entropy_of(d, axis_union(axis_union(an, bn), cn));
}

double local_surprisal_delta(const JointDistribution& d, const Source& source,
                             std::span<const int> outcome) {
    MarginalCache cache(d);
    AxisSet a = d.source_axes(source);
    AxisSet s{d.target_axis()};
    const JointDistribution& ma = cache.marginal(a);
    const JointDistribution& ms = cache.marginal(s);

    std::vector<int> proj;
    for (int axis : a) proj.push_back(outcome[axis]);
    double pa = ma.prob(proj);
    double ps = ms.prob(std::vector<int>{outcome[d.target_axis()]});
    require(pa > 0.0, "local_surprisal_delta: zero marginal p(a)");
    require(ps > 0.0, "local_surprisal_delta: zero marginal p(s)");

    AxisSet as = axis_union(a, s);
    std::vector<int> proj_as;
    for (int axis : as) proj_as.push_back(outcome[axis]);
    double pas = cache.marginal(as).prob(proj_as);
    return std::log2(pas) - std::log2(pa) - std::log2(ps);
}

namespace {

// Alternating-sum walk over nonempty subsets of the groups; `h` maps an axis
// union to a (local or expected) entropy.
template <typename EntropyFn>
double alternating_sum(const std::vector<AxisSet>& groups, EntropyFn h) {
    const int m = static_cast<int>(groups.size());
    double total = 0.0;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        AxisSet axes;
        int k = 0;
        for (int g = 0; g < m; ++g)
            if (mask & (1u << g)) {
                axes = axis_union(axes, groups[g]);
                ++k;
            }
        total += ((k % 2 == 1) ? 1.0 : -1.0) * h(axes);
    }
    return total;
}

std::vector<AxisSet> normalized_groups(const JointDistribution& d,
                                       const std::vector<AxisSet>& groups,
                                       const char* what) {
    require(groups.size() >= 2,
            std::string(what) + ": needs at least 2 groups");
    std::vector<AxisSet> out;
    out.reserve(groups.size());
    for (const auto& g : groups)
        out.push_back(normalized_axes(g, d.axis_count(), what));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            require(disjoint(out[i], out[j]),
                    std::string(what) + ": groups overlap");
    return out;
}

}  // namespace

double coinformation(const JointDistribution& d,
                     const std::vector<AxisSet>& groups) {
    auto gs = normalized_groups(d, groups, "coinformation");
    return alternating_sum(gs,
                           [&](const AxisSet& axes) { return entropy_of(d, axes); });
}

double local_coinformation(const JointDistribution& d,
                           const std::vector<AxisSet>& groups,
                           std::span<const int> outcome) {
    auto gs = normalized_groups(d, groups, "local_coinformation");
    require(d.prob(outcome) > 0.0,
            "local_coinformation: zero-probability outcome");
    MarginalCache cache(d);
    return alternating_sum(gs, [&](const AxisSet& axes) {
        return cache.local_surprisal(axes, outcome);
    });
}

double specific_information(const JointDistribution& d, const Source& source,
                            int target_value) {
    AxisSet a = d.source_axes(source);
    AxisSet as = axis_union(a, {d.target_axis()});
    JointDistribution joint = marginalize(d, as);
    // Position of the target within the kept axes.
    int t_pos = joint.target_axis();

    double ps = 0.0;
    for (Eigen::Index cell = 0; cell < joint.cell_count(); ++cell) {
        auto o = joint.outcome_of(cell);
        if (o[t_pos] == target_value) ps += joint.prob_at(cell);
    }
    require(ps > 0.0, "specific_information: p(s) = 0");

    // Marginal over the source axes alone (drop the target position).
    AxisSet src_pos;
    for (int i = 0; i < joint.axis_count(); ++i)
        if (i != t_pos) src_pos.push_back(i);
    JointDistribution msrc = marginalize(joint, src_pos);

    double total = 0.0;
    for (Eigen::Index cell = 0; cell < joint.cell_count(); ++cell) {
        auto o = joint.outcome_of(cell);
        if (o[t_pos] != target_value) continue;
        double pas = joint.prob_at(cell);
        if (pas <= 0.0) continue;
        std::vector<int> src_outcome;
        for (int i = 0; i < joint.axis_count(); ++i)
            if (i != t_pos) src_outcome.push_back(o[i]);
        double pa = msrc.prob(src_outcome);
        double p_s_given_a = pas / pa;
        total += (pas / ps) * (std::log2(p_s_given_a) - std::log2(ps));
    }
    return total;
}

CoinformationBounds coinformation_bounds_check(const JointDistribution& d) {
    require(d.has_target() && d.axis_count() == 3,
            "coinformation_bounds_check: needs two predictors and a target");
    AxisSet x{d.predictor_axis(1)};
    AxisSet y{d.predictor_axis(2)};
    AxisSet s{d.target_axis()};

    CoinformationBounds r;
    double i_xs = mutual_information(d, s, x);
    double i_ys = mutual_information(d, s, y);
    double i_xy = mutual_information(d, x, y);
    r.interaction_information =
        mutual_information(d, axis_union(x, y), s) - i_xs - i_ys;
    r.lower = -std::min({i_xs, i_ys, i_xy});
    r.upper = std::min({conditional_mutual_information(d, s, x, y),
                        conditional_mutual_information(d, s, y, x),
                        conditional_mutual_information(d, x, y, s)});
    r.lower_margin = r.interaction_information - r.lower;
    r.upper_margin = r.upper - r.interaction_information;
    r.within = r.lower_margin >= -1e-12 && r.upper_margin >= -1e-12;
    return r;
}

const JointDistribution& MarginalCache::marginal(const AxisSet& axes) {
    auto it = cache_.find(axes);
    if (it == cache_.end())
        it = cache_.emplace(axes, marginalize(*dist_, axes)).first;
    return it->second;
}

double MarginalCache::local_surprisal(const AxisSet& axes,
                                      std::span<const int> outcome) {
    const JointDistribution& m = marginal(axes);
    std::vector<int> proj;
    proj.reserve(axes.size());
    for (int axis : axes) proj.push_back(outcome[axis]);
    double p = m.prob(proj);
    if (p <= 0.0)
        throw std::invalid_argument("local surprisal of zero-probability cell");
    return -std::log2(p);
}

AxisSet axis_union(const AxisSet& a, const AxisSet& b) {
    AxisSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
}

}  // namespace pidkit
