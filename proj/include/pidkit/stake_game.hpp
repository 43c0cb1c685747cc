#ifndef PIDKIT_STAKE_GAME_HPP
#define PIDKIT_STAKE_GAME_HPP

/*
 * The asymmetric stake game: two agents guess the binary target from their
 * own predictor under the shared utility v(s, a) = [s == a]; the stake
 * setter additionally scales each round's reward by c(x) = 1 + x of its own
 * observation. Strategies are the agents' posterior-mode guesses (ties go to
 * the lower action) and rewards are exact expectations over the joint
 * distribution.
 */

#include "pidkit/distribution.hpp"

#include <array>

namespace pidkit {

struct StakeGameOutcome {
    int stake_setter = 1;  ///< 1 or 2
    double reward_agent1 = 0.0;
    double reward_agent2 = 0.0;
};

struct StakeGameReport {
    StakeGameOutcome setter1;
    StakeGameOutcome setter2;
    std::array<int, 2> strategy_agent1{};  ///< action per observed value
    std::array<int, 2> strategy_agent2{};
};

/// Requires a two-predictor system with binary predictors and target.
StakeGameReport run_stake_game(const JointDistribution& dist);

}  // namespace pidkit

#endif
