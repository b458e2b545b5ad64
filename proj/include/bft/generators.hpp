#pragma once

// Seeded random instances for property checks. Everything is exact: values and masses
// are small-denominator rationals.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bft/distribution.hpp"
#include "bft/trade.hpp"

namespace bft::gen {

class Source {
public:
    explicit Source(std::uint64_t seed) : rng_(seed) {}

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    long between(long lo, long hi);
    /// k/den with k uniform in [lo, hi].
    Rational fraction(long lo, long hi, long den);
    /// `count` distinct values k/den with 0 <= k <= den, ascending.
    std::vector<Rational> distinct_values(std::size_t count, long den);

private:
    std::mt19937_64 rng_;
};

/// Random finite signal structure with the given number of signals per agent, pushed
/// forward to posteriors. Feasible for `prior` by construction.
JointBeliefDistribution information_structure(Source& src, std::size_t agents, std::size_t signals,
                                              const Rational& prior);

/// Two-agent distribution on at most m1 x m2 support points with equal agent means in
/// (0,1); may or may not be feasible.
JointBeliefDistribution equal_means_pair(Source& src, std::size_t m1, std::size_t m2);

/// Symmetric around 1/2 with at most `atoms` atoms.
ScalarDistribution symmetric_scalar(Source& src, std::size_t atoms, long den);

/// Amounts k/den in [-1,1] on every marginal support value.
TradingScheme scheme_on(Source& src, const JointBeliefDistribution& dist, long den);

}  // namespace bft::gen
