#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pidkit/examples.hpp"
#include "pidkit/solvers.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>

using namespace pidkit;
using doctest::Approx;

namespace {

// Game-variant constraint axes for a two-predictor system laid out (x1,x2,s).
std::vector<AxisSet> game_constraints() { return {{0, 2}, {1, 2}, {0, 1}}; }
std::vector<AxisSet> pairwise_constraints() { return {{0, 2}, {1, 2}}; }

double max_cell_difference(const JointDistribution& a,
                           const JointDistribution& b) {
    return (a.probs() - b.probs()).abs().maxCoeff();
}

}  // namespace

TEST_CASE("maxent fixed points: rdn and and") {
    for (const char* name : {"rdn", "and"}) {
        JointDistribution ref = make_example(name);
        auto [q, report] =
            maxent_under_marginals(ConstraintSet(ref, game_constraints()));
        CHECK(report.converged);
        CHECK(max_cell_difference(q, ref) < 1e-9);
    }
    JointDistribution andd = make_example("and");
    auto [q, report] =
        maxent_under_marginals(ConstraintSet(andd, game_constraints()));
    CHECK(report.objective == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("maxent for xor under pairwise constraints is uniform") {
    JointDistribution x = make_example("xor");
    auto [q, report] =
        maxent_under_marginals(ConstraintSet(x, pairwise_constraints()));
    CHECK(report.converged);
    for (Eigen::Index i = 0; i < q.cell_count(); ++i)
        CHECK(q.prob_at(i) == Approx(0.125).epsilon(1e-9));
    // The predictor-joint constraint changes nothing here: all pairwise
    // marginals of xor are uniform.
    auto [qg, rg] = maxent_under_marginals(ConstraintSet(x, game_constraints()));
    CHECK(max_cell_difference(q, qg) < 1e-9);
}

TEST_CASE("maxent for rdnxor decouples the xor bit") {
    JointDistribution ref = make_example("rdnxor");
    auto [q, report] =
        maxent_under_marginals(ConstraintSet(ref, game_constraints()));
    CHECK(report.converged);
    CHECK(report.objective == Approx(4.0).epsilon(1e-9));
    // Shared bit coupled, remaining three bits uniform: 1/16 on every
    // outcome whose shared-bit components agree.
    for (Eigen::Index i = 0; i < q.cell_count(); ++i) {
        auto o = q.outcome_of(i);
        int r1 = o[0] / 2, r2 = o[1] / 2, rs = o[2] / 2;
        double want = (r1 == r2 && r2 == rs) ? 1.0 / 16 : 0.0;
        CHECK(q.prob_at(i) == Approx(want).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("maxent with the full joint constraint returns the reference") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        JointDistribution ref =
            test::random_distribution(rng, {2, 3, 2}, trial % 2 ? 0.3 : 0.0);
        auto [q, report] =
            maxent_under_marginals(ConstraintSet(ref, {{0, 1, 2}}));
        CHECK(report.converged);
        CHECK(max_cell_difference(q, ref) < 1e-12);
    }
}

TEST_CASE("ipf idempotence") {
    JointDistribution ref = make_example("reducedor");
    auto [q1, r1] =
        maxent_under_marginals(ConstraintSet(ref, game_constraints()));
    auto [q2, r2] =
        maxent_under_marginals(ConstraintSet(q1, game_constraints()));
    CHECK(max_cell_difference(q1, q2) < 1e-9);
}

TEST_CASE("maxent dominates the reference entropy and matches marginals") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 100; ++trial) {
        JointDistribution ref = test::random_distribution(
            rng, trial % 2 ? std::vector<int>{2, 2, 3} : std::vector<int>{2, 3, 2},
            trial % 3 == 0 ? 0.25 : 0.0);
        ConstraintSet cs(ref, game_constraints());
        auto [q, report] = maxent_under_marginals(cs);
        CHECK(report.converged);
        CHECK(entropy(q) >= entropy(ref) - 1e-9);
        for (const AxisSet& axes : cs.marginal_axes()) {
            double l1 = (marginalize(q, axes).probs() -
                         marginalize(ref, axes).probs())
                            .abs()
                            .sum();
            CHECK(l1 <= 1e-9);
        }
    }
}

TEST_CASE("maxent non-convergence is reported, not thrown") {
    JointDistribution ref = make_example("and");
    SolverOptions opts;
    opts.max_iterations = 1;
    auto [q, report] =
        maxent_under_marginals(ConstraintSet(ref, game_constraints()), opts);
    CHECK_FALSE(report.converged);
    CHECK(report.iterations == 1);
    CHECK(report.residual > 0.0);
}

TEST_CASE("broja on and reaches the 1.5-bit optimum") {
    JointDistribution ref = make_example("and");
    BrojaSolution sol = broja_minimize_joint_mi(ref);
    CHECK(sol.report.converged);
    CHECK(sol.report.objective == Approx(0.31127812445913).epsilon(1e-7));
    CHECK(entropy(sol.optimum) == Approx(1.5).epsilon(1e-6));
    std::vector<int> o{0, 1, 0};
    CHECK(sol.optimum.prob(o) == Approx(0.0).scale(1.0).epsilon(1e-7));
    o = {1, 0, 0};
    CHECK(sol.optimum.prob(o) == Approx(0.0).scale(1.0).epsilon(1e-7));
}

TEST_CASE("broja on sum couples the predictors") {
    JointDistribution ref = make_example("sum");
    BrojaSolution sol = broja_minimize_joint_mi(ref);
    CHECK(sol.report.converged);
    CHECK(sol.report.objective == Approx(0.5).epsilon(1e-7));
    JointDistribution xx = marginalize(sol.optimum, {0, 1});
    CHECK(xx.prob(std::vector<int>{0, 0}) == Approx(0.5).epsilon(1e-6));
    CHECK(xx.prob(std::vector<int>{1, 1}) == Approx(0.5).epsilon(1e-6));
    CHECK(xx.prob(std::vector<int>{0, 1}) ==
          Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(xx.prob(std::vector<int>{1, 0}) ==
          Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("broja on reducedor reproduces the coupled optimum") {
    JointDistribution ref = make_example("reducedor");
    BrojaSolution sol = broja_minimize_joint_mi(ref);
    CHECK(sol.report.converged);
    JointDistribution expected = JointDistribution::from_rows(
        {2, 2, 2},
        {{{0, 0, 0}, 0.5}, {{0, 0, 1}, 0.25}, {{1, 1, 1}, 0.25}});
    CHECK(max_cell_difference(sol.optimum, expected) < 1e-6);
}

TEST_CASE("broja leaves an already-optimal distribution alone") {
    JointDistribution ref = make_example("wb-a");
    BrojaSolution sol = broja_minimize_joint_mi(ref);
    CHECK(sol.report.converged);
    CHECK(max_cell_difference(sol.optimum, ref) < 1e-7);
    CHECK(sol.report.objective ==
          Approx(mutual_information(ref, {2}, {0, 1})).epsilon(1e-9));
}

TEST_CASE("broja objective and marginal invariants") {
    std::mt19937_64 rng(77);
    std::vector<JointDistribution> cases;
    cases.push_back(make_example("and"));
    cases.push_back(make_example("sum"));
    cases.push_back(make_example("reducedor"));
    for (int trial = 0; trial < 25; ++trial)
        cases.push_back(test::random_distribution(
            rng, {2, 2, 2}, trial % 3 == 0 ? 0.25 : 0.0));

    for (const JointDistribution& ref : cases) {
        BrojaSolution sol = broja_minimize_joint_mi(ref);
        double joint_ref = mutual_information(ref, {2}, {0, 1});
        CHECK(sol.report.objective <= joint_ref + 1e-9);
        for (AxisSet axes : pairwise_constraints()) {
            double l1 = (marginalize(sol.optimum, axes).probs() -
                         marginalize(ref, axes).probs())
                            .abs()
                            .sum();
            CHECK(l1 <= 1e-9);
        }
        // Maximization direction: co-information can only go up.
        double co_ref = coinformation(ref, {{0}, {1}, {2}});
        double co_opt = coinformation(sol.optimum, {{0}, {1}, {2}});
        CHECK(co_opt >= co_ref - 1e-9);
    }
}

TEST_CASE("broja is deterministic") {
    JointDistribution ref = make_example("and");
    BrojaSolution a = broja_minimize_joint_mi(ref);
    BrojaSolution b = broja_minimize_joint_mi(ref);
    CHECK((a.optimum.probs() == b.optimum.probs()).all());
    CHECK(a.report.objective == b.report.objective);
}

TEST_CASE("broja requires two predictors") {
    CHECK_THROWS_AS(broja_minimize_joint_mi(make_example("dblxor")),
                    std::invalid_argument);
}
