#pragma once

// Implementations (P^l, P^h) of feasible distributions, their uniqueness, and a finite
// censoring of the countable-support extreme point built from geometric signal counters.

#include <cstddef>
#include <vector>

#include "bft/distribution.hpp"
#include "bft/lp.hpp"

namespace bft {

/// A vertex of the domination polytope as a conditional pair. Throws Error(NotFeasible)
/// unless P is p-feasible.
ConditionalPair construct_implementation(const JointBeliefDistribution& dist, const Rational& prior);

/// Range of the high-state mass q(x) at every support atom, in atom order.
/// Throws Error(NotFeasible).
std::vector<lp::VariableRange> implementation_ranges(const JointBeliefDistribution& dist,
                                                     const Rational& prior);

/// True iff every q(x) is pinned, i.e. P has exactly one implementation.
bool implementation_unique(const JointBeliefDistribution& dist, const Rational& prior);

struct EmailExtremeSpec {
    Rational prior{1, 2};
    std::size_t depth = 1;  ///< K >= 1
};

/// The state draws a geometric counter (parameter 2/3 in the low state, 1/2 in the high
/// state); agents see (k, k) in the low state and (k+1, k) in the high state. Here the
/// counter is censored at K+1 and the posteriors at the censored signals are recomputed by
/// Bayes' rule, so all atoms with k <= K keep their exact masses and the result is feasible.
struct EmailExtremePoint {
    JointBeliefDistribution dist;
    ConditionalPair pair;
    std::vector<Rational> t;  ///< t[k-1] = t_k for 1 <= k <= K+1, uncensored
    std::vector<Rational> w;  ///< w[k-1] = w_k for 1 <= k <= K, uncensored
};

/// Throws Error(InvalidArgument) for K = 0 and Error(PriorOutOfRange) for a prior outside (0,1).
EmailExtremePoint email_extreme_point(const EmailExtremeSpec& spec);

/// t_k P(t_k, w_k) = (1 - t_k) P(t_k, w_{k-1}) for 2 <= k <= K-1 and
/// w_k P(t_k, w_k) = (1 - w_k) P(t_{k+1}, w_k) for 1 <= k <= K-1.
bool email_identities_hold(const EmailExtremePoint& point);

}  // namespace bft
