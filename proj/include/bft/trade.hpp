#pragma once

// Trading schemes between a mediator and n agents.
//
// Agent i buys a_i(x_i) units (sells when negative) at her own posterior x_i.
// The mediator's expected profit is bounded below by
//
//     E[ sum_i a_i(x_i) x_i - max(0, sum_i a_i(x_i)) ],
//
// and a positive value is a certificate that the belief distribution cannot
// arise from any information structure.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "bft/distribution.hpp"
#include "bft/rational.hpp"

namespace bft {

class TradingScheme {
public:
    TradingScheme() = default;
    explicit TradingScheme(std::size_t agents) : amounts_(agents) {}
    /// Throws Error(InvalidScheme) if any amount lies outside [-1, 1].
    explicit TradingScheme(std::vector<std::map<Rational, Rational>> amounts);

    [[nodiscard]] std::size_t agents() const noexcept { return amounts_.size(); }
    /// Zero for values without an explicit entry.
    [[nodiscard]] Rational amount(std::size_t agent, const Rational& value) const;
    [[nodiscard]] const std::map<Rational, Rational>& values(std::size_t agent) const {
        return amounts_.at(agent);
    }

    void set(std::size_t agent, const Rational& value, const Rational& amount);

    /// Every amount multiplied by t; t must lie in [0, 1].
    [[nodiscard]] TradingScheme scaled(const Rational& t) const;

    friend bool operator==(const TradingScheme&, const TradingScheme&) = default;

private:
    std::vector<std::map<Rational, Rational>> amounts_;
};

/// Exact mediator-profit lower bound of `scheme` under `dist`. Agents beyond
/// scheme.agents() trade nothing; a scheme with more agents than `dist` is rejected.
Rational evaluate_scheme(const JointBeliefDistribution& dist, const TradingScheme& scheme);

struct SchemeSearchResult {
    TradingScheme best;
    Rational profit;
    std::uint64_t examined = 0;
};

inline constexpr std::uint64_t kDefaultSearchLimit = 10'000'000;

/// Exhaustive maximum over schemes assigning -1, 0 or +1 to every support value
/// independently. Ties go to the lexicographically smallest assignment (agent-major,
/// values ascending, -1 < 0 < +1). Throws Error(SearchSpaceTooLarge) beyond `limit`.
SchemeSearchResult search_indicator_schemes(const JointBeliefDistribution& dist,
                                            std::uint64_t limit = kDefaultSearchLimit);

/// Exhaustive maximum over the narrower family a_i = s_i * 1{A_i}: each agent is a pure
/// buyer or a pure seller of one unit on a subset of her support.
SchemeSearchResult search_signed_indicator_schemes(const JointBeliefDistribution& dist,
                                                   std::uint64_t limit = kDefaultSearchLimit);

struct CubeTrade {
    Rational transfer;
    Rational shortfall;
    Rational profit;
};

/// Threshold scheme a(x) = 1{x >= hi} - 1{x <= lo} for every agent under independent
/// uniform beliefs on [0,1]^n, evaluated in closed form.
CubeTrade uniform_cube_demo(std::size_t agents, const Rational& lo, const Rational& hi);

}  // namespace bft
