#pragma once

// Two-agent agreement inequalities. For events A1, A2 of the agents' posteriors,
// every feasible P satisfies
//
//     P(A1 x not A2)  >=  int_A1 x dP1 - int_A2 x dP2  >=  -P(not A1 x A2),
//
// and for two agents the inequalities over all event pairs characterize
// feasibility.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>

#include "bft/distribution.hpp"

namespace bft {

struct EventPair {
    std::set<Rational> first;   ///< A1, values of agent 1's posterior
    std::set<Rational> second;  ///< A2, values of agent 2's posterior

    friend bool operator==(const EventPair&, const EventPair&) = default;
};

struct AgreementReport {
    Rational lhs;  ///< P(A1 x not A2)
    Rational mid;  ///< int_A1 x dP1 - int_A2 x dP2
    Rational rhs;  ///< -P(not A1 x A2)
    bool satisfied = false;
};

/// Throws Error(WrongArity) unless the distribution has two agents.
AgreementReport agreement_bounds(const JointBeliefDistribution& dist, const EventPair& events);

enum class Inequality {
    Left,   ///< mid exceeds P(A1 x not A2)
    Right,  ///< mid falls below -P(not A1 x A2)
};

struct AgreementViolation {
    EventPair events;
    Rational amount;  ///< strictly positive
    Inequality side = Inequality::Left;
};

struct ScanResult {
    std::optional<AgreementViolation> violation;
    std::uint64_t events_examined = 0;

    [[nodiscard]] bool satisfied() const noexcept { return !violation.has_value(); }
};

inline constexpr std::size_t kDefaultMaxSubsetScan = 24;

/// Full subset scan of both inequalities. Subsets of the smaller marginal support are
/// enumerated and the other event is chosen greedily, so the scan is exact. Reports the
/// first maximal violation in enumeration order (left inequality before right).
/// Throws Error(WrongArity), MartingaleViolation, or Error(SubsetScanTooLarge) when the
/// smaller support exceeds `max_scan` values.
ScanResult dawid_check(const JointBeliefDistribution& dist, std::size_t max_scan = kDefaultMaxSubsetScan);

/// The same inequalities restricted to anchored intervals [0,a] and [a,1], a ranging over
/// the marginal support. Necessary for feasibility but not sufficient.
ScanResult interval_check(const JointBeliefDistribution& dist);

}  // namespace bft
