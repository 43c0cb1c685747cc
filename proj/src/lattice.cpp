#include "pidkit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pidkit {

namespace {

bool source_order(const Source& a, const Source& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
}

// alpha <= beta iff for every B in beta there is an A in alpha with A <= B.
bool antichain_leq(const Antichain& alpha, const Antichain& beta) {
    for (const Source& b : beta.sources()) {
        bool found = false;
        for (const Source& a : alpha.sources())
            if (b.contains(a)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

Source source_from_mask(unsigned mask) {
    std::vector<int> members;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) members.push_back(i + 1);
    return Source(members);
}

// Enumerate antichains by extending with sources in increasing mask order,
// skipping any source comparable with one already chosen.
void enumerate_antichains(const std::vector<Source>& sources,
                          std::size_t first, std::vector<Source>& chosen,
                          std::vector<Antichain>& out) {
    if (!chosen.empty()) out.emplace_back(chosen);
    for (std::size_t i = first; i < sources.size(); ++i) {
        bool comparable = false;
        for (const Source& c : chosen)
            if (c.contains(sources[i]) || sources[i].contains(c)) {
                comparable = true;
                break;
            }
        if (comparable) continue;
        chosen.push_back(sources[i]);
        enumerate_antichains(sources, i + 1, chosen, out);
        chosen.pop_back();
    }
}

}  // namespace

Antichain::Antichain(std::vector<Source> sources)
    : sources_(std::move(sources)) {
    if (sources_.empty())
        throw std::invalid_argument("Antichain: empty source set");
    std::sort(sources_.begin(), sources_.end(), source_order);
    sources_.erase(std::unique(sources_.begin(), sources_.end()),
                   sources_.end());
    for (std::size_t i = 0; i < sources_.size(); ++i)
        for (std::size_t j = 0; j < sources_.size(); ++j)
            if (i != j && sources_[i].contains(sources_[j]))
                throw std::invalid_argument(
                    "Antichain: source {" + sources_[i].label() +
                    "} contains {" + sources_[j].label() + "}");
}

Antichain Antichain::reduce(std::vector<Source> sources) {
    if (sources.empty())
        throw std::invalid_argument("Antichain::reduce: empty source set");
    std::sort(sources.begin(), sources.end(), source_order);
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    std::vector<Source> kept;
    for (const Source& s : sources) {
        bool covers_existing = false;
        for (const Source& k : kept)
            if (s.contains(k)) {
                covers_existing = true;
                break;
            }
        if (!covers_existing) kept.push_back(s);
    }
    return Antichain(std::move(kept));
}

std::string Antichain::name() const {
    std::string out;
    for (const Source& s : sources_) out += "{" + s.label() + "}";
    return out;
}

std::vector<int> Antichain::order_tag() const {
    std::vector<int> tag;
    tag.reserve(sources_.size());
    for (const Source& s : sources_) tag.push_back(s.size());
    std::sort(tag.begin(), tag.end());
    return tag;
}

RedundancyLattice::RedundancyLattice(int n_predictors,
                                     std::vector<LatticeNode> nodes,
                                     std::vector<std::vector<bool>> leq)
    : n_predictors_(n_predictors),
      nodes_(std::move(nodes)),
      leq_(std::move(leq)) {
    below_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            if (i != j && leq_[j][i]) below_[i].push_back(static_cast<int>(j));
}

int RedundancyLattice::index_of(const Antichain& a) const {
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[i].antichain == a) return i;
    throw std::invalid_argument("lattice node not found: " + a.name());
}

int RedundancyLattice::index_of(const std::string& name) const {
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[i].antichain.name() == name) return i;
    throw std::invalid_argument("lattice node not found: " + name);
}

std::vector<std::pair<int, int>> RedundancyLattice::cover_edges() const {
    std::vector<std::pair<int, int>> edges;
    const int n = node_count();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !leq_[i][j]) continue;
            bool covered = true;
            for (int k = 0; k < n && covered; ++k)
                if (k != i && k != j && leq_[i][k] && leq_[k][j])
                    covered = false;
            if (covered) edges.emplace_back(i, j);
        }
    return edges;
}

int RedundancyLattice::bottom() const {
    for (int i = 0; i < node_count(); ++i) {
        bool is_bottom = true;
        for (int j = 0; j < node_count() && is_bottom; ++j)
            if (!leq_[i][j]) is_bottom = false;
        if (is_bottom) return i;
    }
    throw std::logic_error("lattice has no bottom");
}

int RedundancyLattice::top() const {
    for (int i = 0; i < node_count(); ++i) {
        bool is_top = true;
        for (int j = 0; j < node_count() && is_top; ++j)
            if (!leq_[j][i]) is_top = false;
        if (is_top) return i;
    }
    throw std::logic_error("lattice has no top");
}

void RedundancyLattice::moebius_inversion() {
    for (int i = 0; i < node_count(); ++i) {
        double r = nodes_[i].redundancy;
        if (std::isnan(r))
            throw std::invalid_argument(
                "moebius_inversion: node " + nodes_[i].antichain.name() +
                " has no redundancy value");
        double sum_below = 0.0;
        for (int j : below_[i]) sum_below += nodes_[j].partial;
        nodes_[i].partial = r - sum_below;
    }
}

RedundancyLattice build_lattice(int n_predictors) {
    if (n_predictors < 1 || n_predictors > 4)
        throw std::invalid_argument(
            "build_lattice: predictor count must be in 1..4");

    std::vector<Source> sources;
    for (unsigned mask = 1; mask < (1u << n_predictors); ++mask)
        sources.push_back(source_from_mask(mask));
    std::sort(sources.begin(), sources.end(), source_order);

    std::vector<Antichain> antichains;
    std::vector<Source> chosen;
    enumerate_antichains(sources, 0, chosen, antichains);

    const int n = static_cast<int>(antichains.size());
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq[i][j] = antichain_leq(antichains[i], antichains[j]);

    // Level = longest chain from the bottom. Iterate to a fixed point; the
    // order is acyclic so this terminates within n passes.
    std::vector<int> level(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && leq[i][j] && level[j] < level[i] + 1) {
                    level[j] = level[i] + 1;
                    changed = true;
                }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (level[a] != level[b]) return level[a] < level[b];
        if (antichains[a].source_count() != antichains[b].source_count())
            return antichains[a].source_count() < antichains[b].source_count();
        return antichains[a].sources() < antichains[b].sources();
    });

    std::vector<LatticeNode> nodes;
    nodes.reserve(n);
    for (int i : order)
        nodes.push_back(LatticeNode{antichains[i], level[i],
                                    std::numeric_limits<double>::quiet_NaN(),
                                    std::numeric_limits<double>::quiet_NaN()});

    std::vector<std::vector<bool>> leq_sorted(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq_sorted[i][j] = leq[order[i]][order[j]];

    return RedundancyLattice(n_predictors, std::move(nodes),
                             std::move(leq_sorted));
}

std::map<int, std::map<std::vector<int>, double>> order_structure_collapse(
    const RedundancyLattice& lattice) {
    if (lattice.predictor_count() != 3)
        throw std::invalid_argument(
            "order_structure_collapse: defined for the three-variable lattice");
    std::map<int, std::map<std::vector<int>, double>> out;
    for (const LatticeNode& node : lattice.nodes()) {
        if (std::isnan(node.partial))
            throw std::invalid_argument(
                "order_structure_collapse: atoms not filled");
        out[node.level][node.antichain.order_tag()] += node.partial;
    }
    return out;
}

}  // namespace pidkit
