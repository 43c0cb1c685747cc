#include "pidkit/stake_game.hpp"

#include <stdexcept>

namespace pidkit {

StakeGameReport run_stake_game(const JointDistribution& dist) {
    if (!dist.has_target() || dist.axis_count() != 3)
        throw std::invalid_argument(
            "run_stake_game: needs two predictors and a target");
    for (int a = 0; a < dist.axis_count(); ++a)
        if (dist.cardinality(a) != 2)
            throw std::invalid_argument(
                "run_stake_game: all variables must be binary");

    const int t = dist.target_axis();
    const int ax1 = dist.predictor_axis(1);
    const int ax2 = dist.predictor_axis(2);

    // Posterior-mode strategy from the agent's own (X_i, S) marginal;
    // ties break toward the lower action.
    auto strategy_for = [&](int axis) {
        JointDistribution joint = marginalize(dist, {axis, t});
        int t_pos = joint.target_axis();
        int x_pos = 1 - t_pos;
        std::array<int, 2> strategy{};
        for (int x = 0; x < 2; ++x) {
            double best = -1.0;
            int action = 0;
            for (int s = 0; s < 2; ++s) {
                std::vector<int> o(2);
                o[x_pos] = x;
                o[t_pos] = s;
                double p = joint.prob(o);
                if (p > best) {
                    best = p;
                    action = s;
                }
            }
            strategy[x] = action;
        }
        return strategy;
    };

    StakeGameReport report;
    report.strategy_agent1 = strategy_for(ax1);
    report.strategy_agent2 = strategy_for(ax2);

    auto play = [&](int stake_setter) {
        StakeGameOutcome out;
        out.stake_setter = stake_setter;
        for (Eigen::Index cell = 0; cell < dist.cell_count(); ++cell) {
            double p = dist.prob_at(cell);
            if (p <= 0.0) continue;
            auto o = dist.outcome_of(cell);
            int x1 = o[ax1], x2 = o[ax2], s = o[t];
            double stake = 1.0 + (stake_setter == 1 ? x1 : x2);
            if (report.strategy_agent1[x1] == s) out.reward_agent1 += p * stake;
            if (report.strategy_agent2[x2] == s) out.reward_agent2 += p * stake;
        }
        return out;
    };

    report.setter1 = play(1);
    report.setter2 = play(2);
    return report;
}

}  // namespace pidkit
