#ifndef PIDKIT_LATTICE_HPP
#define PIDKIT_LATTICE_HPP

/*
 * The redundancy lattice: antichains of sources ordered by
 *   alpha <= beta  iff  every source in beta contains some source in alpha,
 * with Moebius inversion from redundancy values to partial-information atoms.
 */

#include "pidkit/distribution.hpp"

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pidkit {

/// A set of sources none of which contains another. One lattice node.
class Antichain {
public:
    explicit Antichain(std::vector<Source> sources);

    /// Canonicalize an arbitrary source list: dedupe and drop every source
    /// that strictly contains another (subset equality licenses this).
    static Antichain reduce(std::vector<Source> sources);

    const std::vector<Source>& sources() const noexcept { return sources_; }
    int source_count() const noexcept {
        return static_cast<int>(sources_.size());
    }

    /// Canonical display name, e.g. "{3}{12}". Sources are ordered by
    /// (size, members).
    std::string name() const;

    /// Sorted multiset of source sizes, e.g. (1,2) for {3}{12}.
    std::vector<int> order_tag() const;

    bool operator==(const Antichain&) const = default;

private:
    std::vector<Source> sources_;
};

struct LatticeNode {
    Antichain antichain;
    int level = 0;  ///< longest chain from the bottom node, 1-based
    double redundancy = std::numeric_limits<double>::quiet_NaN();  ///< I_cap
    double partial = std::numeric_limits<double>::quiet_NaN();     ///< I_partial
};

class RedundancyLattice {
public:
    RedundancyLattice(int n_predictors, std::vector<LatticeNode> nodes,
                      std::vector<std::vector<bool>> leq);

    int predictor_count() const noexcept { return n_predictors_; }
    int node_count() const noexcept { return static_cast<int>(nodes_.size()); }

    const LatticeNode& node(int i) const { return nodes_.at(i); }
    LatticeNode& node(int i) { return nodes_.at(i); }
    const std::vector<LatticeNode>& nodes() const noexcept { return nodes_; }

    /// Index of the node with this antichain; throws if absent.
    int index_of(const Antichain& a) const;
    int index_of(const std::string& name) const;

    /// alpha(i) <= alpha(j) in the lattice order.
    bool leq(int i, int j) const { return leq_[i][j]; }
    /// Nodes strictly below node i (indices).
    const std::vector<int>& strictly_below(int i) const {
        return below_[i];
    }

    /// Hasse-diagram edges (lower, upper), each a covering pair.
    std::vector<std::pair<int, int>> cover_edges() const;

    int bottom() const;
    int top() const;

    /// Node order is already topological: strictly lower nodes come first.
    void moebius_inversion();

private:
    int n_predictors_;
    std::vector<LatticeNode> nodes_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<int>> below_;
};

/// All antichains over nonempty subsets of {1..n}, n in 1..4, with the
/// redundancy-lattice order. Node counts: 1, 4, 18, 166 for n = 1..4.
RedundancyLattice build_lattice(int n_predictors);

/// Group a three-predictor lattice's atoms by level and order-structure tag
/// (the multiset of source sizes), summing atoms within each group.
std::map<int, std::map<std::vector<int>, double>> order_structure_collapse(
    const RedundancyLattice& lattice);

}  // namespace pidkit

#endif
