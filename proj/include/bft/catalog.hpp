#pragma once

// Named distributions used throughout the tests and the `examples` command.

#include "bft/distribution.hpp"

namespace bft::catalog {

/// Binary posteriors r and 1-r; given an agent's posterior the other agent holds the
/// same one with probability c. Requires 1/2 <= r <= 1 and 0 <= c <= 1.
JointBeliefDistribution binary_signal(const Rational& r, const Rational& c);

/// 1/2 delta(0,1) + 1/2 delta(1,0).
JointBeliefDistribution perfect_disagreement();

/// Two heavy atoms and two light ones; satisfies every interval inequality but is
/// infeasible. Requires 0 < eps < 1.
JointBeliefDistribution interval_counterexample(const Rational& eps);

/// Four-atom distribution attaining covariance -1/32 at prior 1/2.
JointBeliefDistribution anti_covariance_optimizer();

/// 1/4 delta(0,2/3) + 1/4 delta(2/3,0) + 1/2 delta(2/3,2/3).
JointBeliefDistribution three_point_extreme();

/// (delta_{3/14} + delta_{1/2} + delta_{11/14}) / 3.
ScalarDistribution three_agent_factor();

}  // namespace bft::catalog
