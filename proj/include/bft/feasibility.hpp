#pragma once

// Feasibility of a finitely supported joint belief distribution P for prior p.
//
// P is p-feasible iff some measure Q on supp(P) satisfies Q <= P/p and has
// marginals dQ_i(v) = (v/p) dP_i(v). Q is then the high-state conditional and
// (P - pQ)/(1-p) the low-state one. When the program is infeasible its Farkas
// vector turns into a trading scheme with positive mediator profit.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bft/distribution.hpp"
#include "bft/lp.hpp"
#include "bft/trade.hpp"

namespace bft {

/// The domination program in standard form. Columns: q(x) for every atom, then one
/// slack per atom. Rows: the box constraints q(x) + s(x) = P(x)/p, then one marginal
/// equality per (agent, support value).
struct DominationProgram {
    lp::LpProblem problem;
    std::size_t atoms = 0;
    std::vector<std::pair<std::size_t, Rational>> marginal_rows;  // (agent, value) per row
};

DominationProgram domination_program(const JointBeliefDistribution& dist, const Rational& prior);

struct Feasible {
    ConditionalPair pair;
};

struct InfeasibleTrade {
    TradingScheme certificate;
    Rational profit;
    lp::Vector farkas;
};

struct InfeasibleMartingale {
    std::vector<Rational> means;
    std::optional<Rational> requested_prior;
};

using FeasibilityVerdict = std::variant<Feasible, InfeasibleTrade, InfeasibleMartingale>;

/// Decides p-feasibility. With no prior the common agent mean is used. Throws
/// Error(PriorOutOfRange) for a supplied prior outside (0,1) and Error(DegeneratePrior)
/// when the common mean is 0 or 1.
FeasibilityVerdict check_feasibility(const JointBeliefDistribution& dist,
                                     std::optional<Rational> prior = std::nullopt);

[[nodiscard]] inline bool is_feasible(const FeasibilityVerdict& v) {
    return std::holds_alternative<Feasible>(v);
}

/// Normalizes the marginal-row multipliers of a Farkas vector of the domination program
/// into a trading scheme with amounts in [-1,1]. Throws Error(NotACertificate) if the
/// vector fails exact re-verification or the resulting scheme is not profitable.
TradingScheme certificate_from_farkas(std::span<const Rational> farkas,
                                      const JointBeliefDistribution& dist, const Rational& prior);

}  // namespace bft
