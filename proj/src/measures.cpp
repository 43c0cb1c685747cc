#include "pidkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pidkit {

namespace {

constexpr double kSignDeadZone = 1e-12;

int sign_of(double x) {
    if (x > kSignDeadZone) return 1;
    if (x < -kSignDeadZone) return -1;
    return 0;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::string measure_name(MeasureChoice m) {
    switch (m) {
        case MeasureChoice::IccsGame: return "iccs";
        case MeasureChoice::IccsDecision: return "iccs-decision";
        case MeasureChoice::Imin: return "imin";
        case MeasureChoice::Broja: return "broja";
        case MeasureChoice::Mmi: return "mmi";
    }
    throw std::logic_error("measure_name: unknown measure");
}

MeasureChoice parse_measure(const std::string& name, IccsVariant variant) {
    if (name == "iccs")
        return variant == IccsVariant::Game ? MeasureChoice::IccsGame
                                            : MeasureChoice::IccsDecision;
    if (name == "imin") return MeasureChoice::Imin;
    if (name == "broja") return MeasureChoice::Broja;
    if (name == "mmi") return MeasureChoice::Mmi;
    throw std::invalid_argument("unknown measure: " + name);
}

IccsResult iccs(const JointDistribution& reference,
                const std::vector<Source>& sources, IccsVariant variant,
                const SolverOptions& opts) {
    require(reference.has_target(), "iccs: reference has no target");
    Antichain node = Antichain::reduce(sources);
    for (const Source& s : node.sources())
        require(s.members().back() <= reference.predictor_count(),
                "iccs: source index beyond predictor count");

    // Evaluation space: union of source members plus the target; predictors
    // outside the node are marginalized away first.
    AxisSet union_axes;
    for (const Source& s : node.sources())
        union_axes = axis_union(union_axes, reference.source_axes(s));
    AxisSet keep = axis_union(union_axes, {reference.target_axis()});
    JointDistribution reduced = marginalize(reference, keep);

    // Which original 1-based predictor each reduced axis carries (0 = target).
    std::vector<int> axis_labels(reduced.axis_count(), 0);
    for (int i = 0; i < reduced.axis_count(); ++i) {
        int orig_axis = keep[static_cast<std::size_t>(i)];
        if (orig_axis == reference.target_axis()) continue;
        for (int p = 1; p <= reference.predictor_count(); ++p)
            if (reference.predictor_axis(p) == orig_axis) axis_labels[i] = p;
    }
    auto reduced_source_axes = [&](const Source& s) {
        AxisSet axes;
        for (int m : s.members()) {
            for (int i = 0; i < reduced.axis_count(); ++i)
                if (axis_labels[i] == m) axes.push_back(i);
        }
        std::sort(axes.begin(), axes.end());
        return axes;
    };

    const int t = reduced.target_axis();
    std::vector<AxisSet> source_axes;
    for (const Source& s : node.sources())
        source_axes.push_back(reduced_source_axes(s));

    // Constraints: every (A_i, S) marginal; game variant adds the joint
    // predictor marginal over the union of source members.
    std::vector<AxisSet> constraint_axes;
    for (const AxisSet& a : source_axes)
        constraint_axes.push_back(axis_union(a, {t}));
    if (variant == IccsVariant::Game && node.source_count() > 1)
        constraint_axes.push_back(reduced.predictor_axes());

    IccsResult result{0.0,
                      LocalTermTable{node.sources(), axis_labels, {}},
                      reduced,
                      SolverReport{}};

    if (node.source_count() == 1) {
        // The (A, S) constraint pins the whole evaluation distribution.
        result.evaluation = reduced;
        result.solver.converged = true;
        result.solver.objective = entropy(reduced);
        result.solver.residual = 0.0;
    } else {
        auto [surrogate, report] = maxent_under_marginals(
            ConstraintSet(reduced, constraint_axes), opts);
        result.evaluation = std::move(surrogate);
        result.solver = report;
    }
    const JointDistribution& ev = result.evaluation;

    // Pointwise sweep over the evaluation support.
    MarginalCache cache(ev);
    const AxisSet target_axes{t};
    AxisSet joint_axes;  // union of all source axes
    for (const AxisSet& a : source_axes)
        joint_axes = axis_union(joint_axes, a);

    std::vector<AxisSet> coinfo_groups = source_axes;
    coinfo_groups.push_back(target_axes);
    const int m = static_cast<int>(coinfo_groups.size());

    // Precompute the axis unions of every nonempty subset of the groups,
    // with the subset parity, for the local co-information sum.
    std::vector<std::pair<AxisSet, double>> coinfo_terms;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        AxisSet axes;
        int k = 0;
        for (int g = 0; g < m; ++g)
            if (mask & (1u << g)) {
                axes = axis_union(axes, coinfo_groups[g]);
                ++k;
            }
        coinfo_terms.emplace_back(std::move(axes),
                                  (k % 2 == 1) ? 1.0 : -1.0);
    }

    auto local_h = [&](const AxisSet& axes, const std::vector<int>& outcome) {
        return cache.local_surprisal(axes, outcome);
    };

    double total = 0.0;
    for (Eigen::Index cell = 0; cell < ev.cell_count(); ++cell) {
        double p = ev.prob_at(cell);
        if (p <= 0.0) continue;
        auto outcome = ev.outcome_of(cell);

        LocalTermRow row;
        row.outcome = outcome;
        row.probability = p;

        double hs = local_h(target_axes, outcome);
        for (const AxisSet& a : source_axes) {
            double delta =
                local_h(a, outcome) + hs - local_h(axis_union(a, target_axes), outcome);
            row.source_delta.push_back(delta);
        }
        row.joint_delta = local_h(joint_axes, outcome) + hs -
                          local_h(axis_union(joint_axes, target_axes), outcome);

        double c = 0.0;
        for (const auto& [axes, sign] : coinfo_terms)
            c += sign * local_h(axes, outcome);
        row.local_coinfo = c;

        int want = sign_of(c);
        bool common = want != 0 && sign_of(row.joint_delta) == want;
        for (double delta : row.source_delta)
            common = common && sign_of(delta) == want;
        row.common_change = common ? c : 0.0;

        total += p * row.common_change;
        result.table.rows.push_back(std::move(row));
    }
    result.value = total;
    return result;
}

double imin(const JointDistribution& reference,
            const std::vector<Source>& sources) {
    require(reference.has_target(), "imin: reference has no target");
    Antichain node = Antichain::reduce(sources);

    JointDistribution target_marg =
        marginalize(reference, {reference.target_axis()});
    double total = 0.0;
    for (int s = 0; s < reference.cardinality(reference.target_axis()); ++s) {
        double ps = target_marg.prob_at(s);
        if (ps <= 0.0) continue;
        double smallest = std::numeric_limits<double>::infinity();
        for (const Source& src : node.sources())
            smallest =
                std::min(smallest, specific_information(reference, src, s));
        total += ps * smallest;
    }
    return total;
}

double immi(const JointDistribution& reference,
            const std::vector<Source>& sources) {
    require(reference.has_target(), "immi: reference has no target");
    Antichain node = Antichain::reduce(sources);
    double smallest = std::numeric_limits<double>::infinity();
    for (const Source& src : node.sources())
        smallest = std::min(
            smallest, mutual_information(reference, {reference.target_axis()},
                                         reference.source_axes(src)));
    return smallest;
}

BrojaRedundancy broja_redundancy(const JointDistribution& reference,
                                 const SolverOptions& opts) {
    require(reference.has_target() && reference.predictor_count() == 2,
            "broja_redundancy: requires exactly two predictors");
    BrojaSolution solution = broja_minimize_joint_mi(reference, opts);
    const AxisSet s{reference.target_axis()};
    double i1 = mutual_information(reference, s,
                                   {reference.predictor_axis(1)});
    double i2 = mutual_information(reference, s,
                                   {reference.predictor_axis(2)});
    double value = i1 + i2 - solution.report.objective;
    return BrojaRedundancy{value, std::move(solution)};
}

PIDResult pid(const JointDistribution& reference, MeasureChoice measure,
              const SolverOptions& opts) {
    require(reference.has_target(), "pid: reference has no target");
    const int n = reference.predictor_count();
    if (measure == MeasureChoice::Broja)
        require(n == 2, "pid: broja is defined for two predictors");
    else
        require(n >= 1 && n <= 3, "pid: supported for up to three predictors");

    PIDResult result{build_lattice(n), measure, {}, true};
    result.node_reports.resize(result.lattice.node_count());

    const AxisSet target_axes{reference.target_axis()};
    for (int i = 0; i < result.lattice.node_count(); ++i) {
        LatticeNode& node = result.lattice.node(i);
        const auto& sources = node.antichain.sources();
        if (sources.size() == 1) {
            // Self-redundancy: single-source nodes carry plain MI.
            node.redundancy = mutual_information(
                reference, target_axes, reference.source_axes(sources[0]));
            result.node_reports[i].converged = true;
            continue;
        }
        switch (measure) {
            case MeasureChoice::IccsGame:
            case MeasureChoice::IccsDecision: {
                auto r = iccs(reference, sources,
                              measure == MeasureChoice::IccsGame
                                  ? IccsVariant::Game
                                  : IccsVariant::Decision,
                              opts);
                node.redundancy = r.value;
                result.node_reports[i] = r.solver;
                break;
            }
            case MeasureChoice::Imin:
                node.redundancy = imin(reference, sources);
                result.node_reports[i].converged = true;
                break;
            case MeasureChoice::Mmi:
                node.redundancy = immi(reference, sources);
                result.node_reports[i].converged = true;
                break;
            case MeasureChoice::Broja: {
                auto r = broja_redundancy(reference, opts);
                node.redundancy = r.value;
                result.node_reports[i] = r.solution.report;
                break;
            }
        }
        if (!result.node_reports[i].converged) result.all_converged = false;
    }

    result.lattice.moebius_inversion();
    return result;
}

double target_specific_coinformation(const JointDistribution& reference,
                                     const Source& a1, const Source& a2) {
    require(reference.has_target() && reference.predictor_count() == 2,
            "target_specific_coinformation: two predictors required");
    JointDistribution target_marg =
        marginalize(reference, {reference.target_axis()});
    Source joint_src(
        [&] {
            std::vector<int> m = a1.members();
            for (int x : a2.members()) m.push_back(x);
            std::sort(m.begin(), m.end());
            m.erase(std::unique(m.begin(), m.end()), m.end());
            return m;
        }());

    double total = 0.0;
    for (int s = 0; s < reference.cardinality(reference.target_axis()); ++s) {
        double ps = target_marg.prob_at(s);
        if (ps <= 0.0) continue;
        double overlap = specific_information(reference, a1, s) +
                         specific_information(reference, a2, s) -
                         specific_information(reference, joint_src, s);
        total += ps * std::max(overlap, 0.0);
    }
    return total;
}

double source_specific_coinformation(const JointDistribution& reference,
                                     const Source& a1, const Source& a2) {
    require(reference.has_target() && reference.predictor_count() == 2,
            "source_specific_coinformation: two predictors required");

    const int t = reference.target_axis();
    AxisSet ax1 = reference.source_axes(a1);
    AxisSet ax2 = reference.source_axes(a2);
    AxisSet both = axis_union(ax1, ax2);

    MarginalCache cache(reference);
    const JointDistribution& m_both = cache.marginal(both);
    const JointDistribution& m_t = cache.marginal({t});

    // I(S; A=a) = sum_s p(s|a) log2 [ p(s|a) / p(s) ], evaluated from the
    // (A, S) marginal at the source value taken from `outcome`.
    auto value_specific = [&](const AxisSet& axes,
                              const std::vector<int>& outcome) {
        const JointDistribution& joint = cache.marginal(axis_union(axes, {t}));
        const JointDistribution& src = cache.marginal(axes);
        std::vector<int> src_outcome;
        for (int a : axes) src_outcome.push_back(outcome[a]);
        double pa = src.prob(src_outcome);
        if (pa <= 0.0) return 0.0;
        double total = 0.0;
        AxisSet joint_axes = axis_union(axes, {t});
        for (int s = 0; s < reference.cardinality(t); ++s) {
            std::vector<int> full = outcome;
            full[t] = s;
            std::vector<int> proj;
            for (int a : joint_axes) proj.push_back(full[a]);
            double pas = joint.prob(proj);
            if (pas <= 0.0) continue;
            double ps = m_t.prob_at(s);
            total += (pas / pa) * (std::log2(pas / pa) - std::log2(ps));
        }
        return total;
    };

    double total = 0.0;
    for (Eigen::Index cell = 0; cell < m_both.cell_count(); ++cell) {
        double pa = m_both.prob_at(cell);
        if (pa <= 0.0) continue;
        auto both_outcome = m_both.outcome_of(cell);
        // Expand to a full outcome so axis positions line up.
        std::vector<int> full(reference.axis_count(), 0);
        for (std::size_t i = 0; i < both.size(); ++i)
            full[both[i]] = both_outcome[i];
        double overlap = value_specific(ax1, full) + value_specific(ax2, full) -
                         value_specific(both, full);
        total += pa * std::max(overlap, 0.0);
    }
    return total;
}

std::vector<ContinuityViolation> continuity_check(const LocalTermTable& table) {
    std::vector<ContinuityViolation> violations;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const LocalTermRow& row = table.rows[i];
        if (row.source_delta.size() != 2) continue;
        if (row.common_change == 0.0) continue;  // sign condition failed
        double smallest = std::min(std::abs(row.source_delta[0]),
                                   std::abs(row.source_delta[1]));
        if (std::abs(row.local_coinfo) > smallest + 1e-9)
            violations.push_back(
                ContinuityViolation{i, row.local_coinfo, smallest});
    }
    return violations;
}

}  // namespace pidkit
