#ifndef PIDKIT_MEASURES_HPP
#define PIDKIT_MEASURES_HPP

/*
 * The four redundancy measures (I_ccs, I_min, I_broja, I_mmi) and the full
 * lattice evaluation pipeline.
 *
 * I_ccs evaluates pointwise terms under a maximum-entropy surrogate:
 * constraints are the source-target marginals (both variants) plus the joint
 * predictor marginal (game variant). A pointwise co-information term counts
 * as common change in surprisal only when every tested sign agrees: the n
 * per-source deltas, the joint delta, and the local co-information itself.
 */

#include "pidkit/distribution.hpp"
#include "pidkit/lattice.hpp"
#include "pidkit/solvers.hpp"

#include <string>
#include <vector>

namespace pidkit {

enum class MeasureChoice { IccsGame, IccsDecision, Imin, Broja, Mmi };

enum class IccsVariant {
    Game,      ///< P-hat: source-target marginals + joint predictor marginal
    Decision,  ///< P-hat-ind: source-target marginals only
};

std::string measure_name(MeasureChoice m);
MeasureChoice parse_measure(const std::string& name, IccsVariant variant);

/// One support row of the evaluation distribution with its pointwise terms.
struct LocalTermRow {
    std::vector<int> outcome;          ///< evaluation-space outcome
    double probability = 0.0;          ///< under the evaluation distribution
    std::vector<double> source_delta;  ///< delta_s h(a_i) per source
    double joint_delta = 0.0;          ///< delta_s h(a_1,...,a_n)
    double local_coinfo = 0.0;         ///< c(a_1,...,a_n,s)
    double common_change = 0.0;        ///< delta_s h^com
};

struct LocalTermTable {
    std::vector<Source> sources;   ///< canonicalized node
    std::vector<int> axis_labels;  ///< original 1-based predictor per axis,
                                   ///< 0 for the target, in evaluation order
    std::vector<LocalTermRow> rows;
};

struct IccsResult {
    double value = 0.0;
    LocalTermTable table;
    JointDistribution evaluation;  ///< the maxent surrogate
    SolverReport solver;
};

/// Common change in surprisal for a node. Source lists are reduced to their
/// antichain first: redundancy with a superset source adds nothing.
IccsResult iccs(const JointDistribution& reference,
                const std::vector<Source>& sources,
                IccsVariant variant = IccsVariant::Game,
                const SolverOptions& opts = {});

/// Expected minimum specific information over the sources.
double imin(const JointDistribution& reference,
            const std::vector<Source>& sources);

/// Minimum single-source mutual information.
double immi(const JointDistribution& reference,
            const std::vector<Source>& sources);

struct BrojaRedundancy {
    double value = 0.0;          ///< co-information of the optimum
    BrojaSolution solution;
};

/// Maximized co-information over the pairwise-marginal polytope:
/// I(S;X1) + I(S;X2) - min_Q I_Q(S;X1,X2). Two predictors only.
BrojaRedundancy broja_redundancy(const JointDistribution& reference,
                                 const SolverOptions& opts = {});

struct PIDResult {
    RedundancyLattice lattice;  ///< redundancy and partial filled
    MeasureChoice measure = MeasureChoice::IccsGame;
    std::vector<SolverReport> node_reports;  ///< by node index
    bool all_converged = true;

    double atom(const std::string& node_name) const {
        return lattice.node(lattice.index_of(node_name)).partial;
    }
    double redundancy(const std::string& node_name) const {
        return lattice.node(lattice.index_of(node_name)).redundancy;
    }
};

/// Full PID: fill every node's redundancy (plain mutual information for
/// single-source nodes), then Moebius-invert. iccs/imin/mmi support up to
/// three predictors; broja requires exactly two.
PIDResult pid(const JointDistribution& reference, MeasureChoice measure,
              const SolverOptions& opts = {});

/// Specific co-information variants, thresholded at zero. Two sources.
double target_specific_coinformation(const JointDistribution& reference,
                                     const Source& a1, const Source& a2);
double source_specific_coinformation(const JointDistribution& reference,
                                     const Source& a1, const Source& a2);

/// A row whose sign-consistent overlap exceeds the smaller per-source delta
/// in magnitude. Expected to be empty for every example system.
struct ContinuityViolation {
    std::size_t row = 0;
    double overlap = 0.0;
    double smallest_delta = 0.0;
};
std::vector<ContinuityViolation> continuity_check(const LocalTermTable& table);

}  // namespace pidkit

#endif
