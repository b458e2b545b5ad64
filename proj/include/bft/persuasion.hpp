#pragma once

// First-order persuasion on a belief grid: maximize the integral of v over joint
// posterior distributions that some information structure with prior p can induce and
// whose support lies on the grid. The program is exact, so the returned value is a
// certified lower bound on the unrestricted optimum and equals it whenever an optimum
// lives on the grid.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bft/distribution.hpp"

namespace bft {

class BeliefGrid {
public:
    /// Per-agent value lists; each is sorted and deduplicated. Throws Error(InvalidGrid)
    /// for no agents, an empty list, or values outside [0,1].
    explicit BeliefGrid(std::vector<std::vector<Rational>> values);

    static BeliefGrid shared(std::vector<Rational> values, std::size_t agents);
    /// {0, step, 2 step, ...} up to 1, with 1 and any `extra` values added.
    static BeliefGrid uniform(const Rational& step, std::size_t agents, std::vector<Rational> extra = {});

    [[nodiscard]] std::size_t agents() const noexcept { return values_.size(); }
    [[nodiscard]] const std::vector<Rational>& values(std::size_t agent) const { return values_.at(agent); }
    /// All grid tuples, agent 0 most significant.
    [[nodiscard]] std::vector<BeliefPoint> points() const;
    [[nodiscard]] bool contains(const BeliefPoint& point) const;

private:
    std::vector<std::vector<Rational>> values_;
};

class IndirectUtility {
public:
    using Function = std::function<Rational(const BeliefPoint&)>;

    IndirectUtility(std::string name, Function f, std::optional<std::size_t> arity = std::nullopt)
        : name_(std::move(name)), f_(std::move(f)), arity_(arity) {}

    /// |x1 - x2|^a for a positive integer a.
    static IndirectUtility polarization(unsigned exponent);
    /// -(x1 - c)(x2 - c).
    static IndirectUtility neg_covariance(const Rational& center);
    static IndirectUtility constant(const Rational& c);
    /// Lookup table; evaluating a point that is not in the table throws
    /// Error(MissingObjectiveValue).
    static IndirectUtility table(std::map<BeliefPoint, Rational> values);

    [[nodiscard]] Rational operator()(const BeliefPoint& x) const { return f_(x); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::optional<std::size_t> arity() const noexcept { return arity_; }

private:
    std::string name_;
    Function f_;
    std::optional<std::size_t> arity_;
};

struct PersuasionResult {
    Rational value;
    JointBeliefDistribution optimizer;  ///< blend of the optimal conditionals
    ConditionalPair pair;
    std::size_t constraints = 0;  ///< equality rows of the program
};

/// Throws Error(PriorOutOfRange), Error(WrongArity) when the objective's arity differs
/// from the grid's, and Error(GridExcludesFeasibility) when no grid-supported
/// distribution is feasible.
PersuasionResult persuade_grid(const BeliefGrid& grid, const Rational& prior, const IndirectUtility& v);

/// (1/2)^exponent, kept symbolic for non-integer exponents.
struct SymbolicPower {
    Rational base;
    Rational exponent;
    double approx = 0.0;
};

struct Unsupported {};

using PolarizationValue = std::variant<Rational, SymbolicPower, Unsupported>;

/// Known optimal values for |x1 - x2|^a with two receivers. Throws Error(InvalidArgument)
/// unless a > 0 and 0 < p < 1.
PolarizationValue closed_form_polarization(const Rational& exponent, const Rational& prior);

/// Smallest covariance of two posteriors over grid-supported feasible distributions.
Rational min_covariance(const Rational& prior, const BeliefGrid& grid);

}  // namespace bft
