#ifndef PIDKIT_EXAMPLES_HPP
#define PIDKIT_EXAMPLES_HPP

/*
 * Named example systems. Every entry is a small exactly-specified discrete
 * distribution with the target on the last axis.
 */

#include "pidkit/distribution.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pidkit {

struct ExampleInfo {
    std::string name;
    std::string summary;
    int predictors = 0;
    std::function<JointDistribution()> make;
};

/// All fixed registry entries (predpred is parameterized separately but
/// listed with its default parameter).
const std::vector<ExampleInfo>& example_registry();

/// Look up by name; accepts "predpred(c)" with a numeric parameter, e.g.
/// "predpred(-0.4)". Throws std::invalid_argument for unknown names.
JointDistribution make_example(const std::string& name);

/// The fixed-target-marginal family with predictor-predictor correlation c.
/// Valid for -0.8 <= c <= 0.1.
JointDistribution make_predpred(double c);

}  // namespace pidkit

#endif
