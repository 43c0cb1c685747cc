#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pidkit/lattice.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace pidkit;
using doctest::Approx;

namespace {

std::set<std::pair<std::string, std::string>> edge_names(
    const RedundancyLattice& lat) {
    std::set<std::pair<std::string, std::string>> out;
    for (auto [lo, hi] : lat.cover_edges())
        out.insert({lat.node(lo).antichain.name(),
                    lat.node(hi).antichain.name()});
    return out;
}

}  // namespace

TEST_CASE("node counts per predictor count") {
    CHECK(build_lattice(1).node_count() == 1);
    CHECK(build_lattice(2).node_count() == 4);
    CHECK(build_lattice(3).node_count() == 18);
    CHECK(build_lattice(4).node_count() == 166);
    CHECK_THROWS_AS(build_lattice(0), std::invalid_argument);
    CHECK_THROWS_AS(build_lattice(5), std::invalid_argument);
}

TEST_CASE("two-variable lattice matches the hand-drawn chain") {
    RedundancyLattice lat = build_lattice(2);
    CHECK(lat.node(0).antichain.name() == "{1}{2}");
    CHECK(lat.node(1).antichain.name() == "{1}");
    CHECK(lat.node(2).antichain.name() == "{2}");
    CHECK(lat.node(3).antichain.name() == "{12}");
    CHECK(lat.bottom() == 0);
    CHECK(lat.top() == 3);

    std::set<std::pair<std::string, std::string>> expected{
        {"{1}{2}", "{1}"},
        {"{1}{2}", "{2}"},
        {"{1}", "{12}"},
        {"{2}", "{12}"},
    };
    CHECK(edge_names(lat) == expected);
}

TEST_CASE("three-variable lattice matches the hand-drawn diagram") {
    RedundancyLattice lat = build_lattice(3);

    std::set<std::pair<std::string, std::string>> expected{
        // bottom to the pair level
        {"{1}{2}{3}", "{1}{2}"},
        {"{1}{2}{3}", "{1}{3}"},
        {"{1}{2}{3}", "{2}{3}"},
        // pair level to singleton-with-pair level
        {"{1}{2}", "{1}{23}"},
        {"{1}{2}", "{2}{13}"},
        {"{1}{3}", "{1}{23}"},
        {"{1}{3}", "{3}{12}"},
        {"{2}{3}", "{2}{13}"},
        {"{2}{3}", "{3}{12}"},
        // up to the singles and the triple-pair node
        {"{1}{23}", "{1}"},
        {"{2}{13}", "{2}"},
        {"{3}{12}", "{3}"},
        {"{1}{23}", "{12}{13}{23}"},
        {"{2}{13}", "{12}{13}{23}"},
        {"{3}{12}", "{12}{13}{23}"},
        // up to the two-pair level
        {"{1}", "{12}{13}"},
        {"{2}", "{12}{23}"},
        {"{3}", "{13}{23}"},
        {"{12}{13}{23}", "{12}{13}"},
        {"{12}{13}{23}", "{12}{23}"},
        {"{12}{13}{23}", "{13}{23}"},
        // up to the pairs
        {"{12}{13}", "{12}"},
        {"{12}{13}", "{13}"},
        {"{12}{23}", "{12}"},
        {"{12}{23}", "{23}"},
        {"{13}{23}", "{13}"},
        {"{13}{23}", "{23}"},
        // pairs to the top
        {"{12}", "{123}"},
        {"{13}", "{123}"},
        {"{23}", "{123}"},
    };
    CHECK(edge_names(lat) == expected);

    // Table-12 levels.
    CHECK(lat.node(lat.index_of("{1}{2}{3}")).level == 1);
    CHECK(lat.node(lat.index_of("{1}{2}")).level == 2);
    CHECK(lat.node(lat.index_of("{3}{12}")).level == 3);
    CHECK(lat.node(lat.index_of("{1}")).level == 4);
    CHECK(lat.node(lat.index_of("{12}{13}{23}")).level == 4);
    CHECK(lat.node(lat.index_of("{12}{13}")).level == 5);
    CHECK(lat.node(lat.index_of("{12}")).level == 6);
    CHECK(lat.node(lat.index_of("{123}")).level == 7);
}

TEST_CASE("single-predictor lattice") {
    RedundancyLattice lat = build_lattice(1);
    CHECK(lat.node(0).antichain.name() == "{1}");
    CHECK(lat.bottom() == lat.top());
}

TEST_CASE("order relation is a partial order and respects antichains") {
    for (int n : {2, 3}) {
        RedundancyLattice lat = build_lattice(n);
        const int m = lat.node_count();
        for (int i = 0; i < m; ++i) {
            CHECK(lat.leq(i, i));  // reflexive
            // every node passes the no-superset predicate by construction
            const auto& sources = lat.node(i).antichain.sources();
            for (std::size_t a = 0; a < sources.size(); ++a)
                for (std::size_t b = 0; b < sources.size(); ++b)
                    if (a != b) CHECK_FALSE(sources[a].contains(sources[b]));
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i != j && lat.leq(i, j)) CHECK_FALSE(lat.leq(j, i));
                for (int k = 0; k < m; ++k)
                    if (lat.leq(i, j) && lat.leq(j, k)) CHECK(lat.leq(i, k));
            }
    }
}

TEST_CASE("antichain reduce drops superset sources") {
    Antichain r = Antichain::reduce({Source{1}, Source{1, 2}});
    CHECK(r.name() == "{1}");
    Antichain r2 = Antichain::reduce({Source{1, 2}, Source{2}, Source{1, 2}});
    CHECK(r2.name() == "{2}");
    CHECK_THROWS_AS(Antichain({Source{1}, Source{1, 2}}),
                    std::invalid_argument);
}

TEST_CASE("moebius inversion on the worked four-node example") {
    RedundancyLattice lat = build_lattice(2);
    lat.node(lat.index_of("{1}{2}")).redundancy = 1.0;
    lat.node(lat.index_of("{1}")).redundancy = 2.0;
    lat.node(lat.index_of("{2}")).redundancy = 2.0;
    lat.node(lat.index_of("{12}")).redundancy = 4.0;
    lat.moebius_inversion();
    CHECK(lat.node(lat.index_of("{1}{2}")).partial == Approx(1.0));
    CHECK(lat.node(lat.index_of("{1}")).partial == Approx(1.0));
    CHECK(lat.node(lat.index_of("{2}")).partial == Approx(1.0));
    CHECK(lat.node(lat.index_of("{12}")).partial == Approx(1.0));
}

TEST_CASE("two-variable inversion algebra") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        RedundancyLattice lat = build_lattice(2);
        double c_bottom = unit(rng), c1 = unit(rng), c2 = unit(rng),
               c12 = unit(rng);
        lat.node(lat.index_of("{1}{2}")).redundancy = c_bottom;
        lat.node(lat.index_of("{1}")).redundancy = c1;
        lat.node(lat.index_of("{2}")).redundancy = c2;
        lat.node(lat.index_of("{12}")).redundancy = c12;
        lat.moebius_inversion();
        CHECK(lat.node(lat.index_of("{12}")).partial ==
              Approx(c12 - c1 - c2 + c_bottom).epsilon(1e-12));
    }
}

TEST_CASE("equal redundancies concentrate on the bottom node") {
    for (int n : {2, 3}) {
        RedundancyLattice lat = build_lattice(n);
        for (int i = 0; i < lat.node_count(); ++i)
            lat.node(i).redundancy = 0.75;
        lat.moebius_inversion();
        for (int i = 0; i < lat.node_count(); ++i) {
            double want = (i == lat.bottom()) ? 0.75 : 0.0;
            CHECK(lat.node(i).partial == Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("moebius round-trip recovers redundancies") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(-1.0, 2.0);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 100; ++trial) {
            RedundancyLattice lat = build_lattice(n);
            for (int i = 0; i < lat.node_count(); ++i)
                lat.node(i).redundancy = unit(rng);
            lat.moebius_inversion();
            for (int i = 0; i < lat.node_count(); ++i) {
                double sum = lat.node(i).partial;
                for (int j : lat.strictly_below(i)) sum += lat.node(j).partial;
                CHECK(sum ==
                      Approx(lat.node(i).redundancy).epsilon(1e-12).scale(1.0));
            }
        }
    }
}

TEST_CASE("atom sum equals the top redundancy") {
    std::mt19937_64 rng(4321);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RedundancyLattice lat = build_lattice(3);
    for (int i = 0; i < lat.node_count(); ++i)
        lat.node(i).redundancy = unit(rng);
    lat.node(lat.top()).redundancy = 3.0;
    lat.moebius_inversion();
    double total = 0.0;
    for (int i = 0; i < lat.node_count(); ++i) total += lat.node(i).partial;
    CHECK(total == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("order structure collapse layout") {
    RedundancyLattice lat = build_lattice(3);
    for (int i = 0; i < lat.node_count(); ++i) lat.node(i).partial = 0.0;
    lat.node(lat.index_of("{1}{2}{3}")).partial = 1.0;
    lat.node(lat.index_of("{12}")).partial = 1.5;
    lat.node(lat.index_of("{13}")).partial = 0.5;
    lat.node(lat.index_of("{123}")).partial = -1.0;
    lat.node(lat.index_of("{1}")).partial = 0.25;
    lat.node(lat.index_of("{12}{13}{23}")).partial = 0.125;

    auto collapsed = order_structure_collapse(lat);
    CHECK(collapsed.at(1).at({1, 1, 1}) == Approx(1.0));
    CHECK(collapsed.at(6).at({2}) == Approx(2.0));
    CHECK(collapsed.at(7).at({3}) == Approx(-1.0));
    CHECK(collapsed.at(4).at({1}) == Approx(0.25));
    CHECK(collapsed.at(4).at({2, 2, 2}) == Approx(0.125));
    CHECK(collapsed.at(2).at({1, 1}) == Approx(0.0));
    CHECK(collapsed.at(3).at({1, 2}) == Approx(0.0));
    CHECK(collapsed.at(5).at({2, 2}) == Approx(0.0));

    CHECK_THROWS_AS(order_structure_collapse(build_lattice(2)),
                    std::invalid_argument);
}
