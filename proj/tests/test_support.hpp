#ifndef PIDKIT_TEST_SUPPORT_HPP
#define PIDKIT_TEST_SUPPORT_HPP

#include "pidkit/distribution.hpp"

#include <random>
#include <vector>

namespace pidkit::test {

/// Deterministic random distribution over the given alphabet. With
/// zero_fraction > 0, roughly that share of cells is hard-zeroed (always
/// keeping at least two support cells).
inline JointDistribution random_distribution(std::mt19937_64& rng,
                                             std::vector<int> cards,
                                             double zero_fraction = 0.0) {
    Eigen::Index cells = 1;
    for (int c : cards) cells *= c;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ArrayXd p(cells);
    while (true) {
        int support = 0;
        for (Eigen::Index i = 0; i < cells; ++i) {
            if (unit(rng) < zero_fraction) {
                p[i] = 0.0;
            } else {
                double u = unit(rng);
                p[i] = u * u;  // skew toward small probabilities
                ++support;
            }
        }
        if (support >= 2 && p.sum() > 0) break;
    }
    p /= p.sum();
    return JointDistribution(std::move(cards), std::move(p));
}

/// Product distribution p(x) * q(s) over two axes.
inline JointDistribution product_distribution(const std::vector<double>& px,
                                              const std::vector<double>& ps) {
    ArrayXd p(static_cast<Eigen::Index>(px.size() * ps.size()));
    Eigen::Index k = 0;
    for (double a : px)
        for (double b : ps) p[k++] = a * b;
    return JointDistribution(
        {static_cast<int>(px.size()), static_cast<int>(ps.size())}, p);
}

}  // namespace pidkit::test

#endif
