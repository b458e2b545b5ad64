#pragma once

// Finitely supported belief distributions over a binary state.
//
// A belief is the posterior probability an agent attaches to the high state,
// so every coordinate lives in [0,1]. Distributions are immutable values:
// construction merges duplicate points, strips zero-mass atoms, sorts atoms
// lexicographically and then validates.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bft/error.hpp"
#include "bft/rational.hpp"

namespace bft {

class BeliefPoint {
public:
    BeliefPoint() = default;
    explicit BeliefPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    BeliefPoint(std::initializer_list<Rational> coords) : coords_(coords) {}

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] const Rational& operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] const std::vector<Rational>& coords() const noexcept { return coords_; }
    [[nodiscard]] auto begin() const noexcept { return coords_.begin(); }
    [[nodiscard]] auto end() const noexcept { return coords_.end(); }

    [[nodiscard]] std::string str() const;

    friend bool operator==(const BeliefPoint&, const BeliefPoint&) = default;
    friend std::strong_ordering operator<=>(const BeliefPoint& a, const BeliefPoint& b) {
        return a.coords_ <=> b.coords_;
    }

private:
    std::vector<Rational> coords_;
};

struct Atom {
    BeliefPoint point;
    Rational mass;
};

struct ValidationError {
    ErrorCode code;
    std::size_t atom_index;
    std::string message;
};

/// Checks the raw atom list against the distribution invariants, reporting the first
/// violation in atom order. Duplicate points are reported, not merged.
std::optional<ValidationError> validate(std::size_t agents, std::span<const Atom> atoms);

struct ValueMass {
    Rational value;
    Rational mass;
};

/// A probability measure on [0,1] with finite support, atoms sorted by value.
class ScalarDistribution {
public:
    ScalarDistribution() = default;
    explicit ScalarDistribution(std::vector<ValueMass> atoms);

    static ScalarDistribution point_mass(const Rational& value);

    [[nodiscard]] const std::vector<ValueMass>& atoms() const noexcept { return atoms_; }
    [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
    [[nodiscard]] Rational mass_at(const Rational& value) const;
    [[nodiscard]] Rational mean() const;
    [[nodiscard]] std::vector<Rational> support() const;

    friend bool operator==(const ScalarDistribution& a, const ScalarDistribution& b);

private:
    std::vector<ValueMass> atoms_;
};

class JointBeliefDistribution {
public:
    JointBeliefDistribution(std::size_t agents, std::vector<Atom> atoms);

    static JointBeliefDistribution point_mass(BeliefPoint point);
    static JointBeliefDistribution product(std::span<const ScalarDistribution> factors);
    static JointBeliefDistribution power(const ScalarDistribution& factor, std::size_t agents);

    [[nodiscard]] std::size_t agents() const noexcept { return agents_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
    [[nodiscard]] Rational mass_at(const BeliefPoint& point) const;

    /// Joint law of the listed agents, in the listed order.
    [[nodiscard]] JointBeliefDistribution project(std::span<const std::size_t> agents) const;

    friend bool operator==(const JointBeliefDistribution& a, const JointBeliefDistribution& b);

private:
    std::size_t agents_ = 0;
    std::vector<Atom> atoms_;
};

/// Mixture sum_k weights[k] * parts[k]; weights must be nonnegative and sum to 1.
JointBeliefDistribution mix(std::span<const Rational> weights,
                            std::span<const JointBeliefDistribution> parts);

ScalarDistribution marginal(const JointBeliefDistribution& dist, std::size_t agent);

std::vector<Rational> agent_means(const JointBeliefDistribution& dist);

/// The common mean posterior. Throws MartingaleViolation when agents disagree and
/// Error(DegeneratePrior) when the common mean is 0 or 1.
Rational implied_prior(const JointBeliefDistribution& dist);

/// Beliefs conditional on each state: low for the low state, high for the high state.
class ConditionalPair {
public:
    /// Throws unless the prior lies in (0,1), both sides have the same agent count and
    /// every marginal satisfies prior * high_i(v) = v * blend_i(v).
    ConditionalPair(Rational prior, JointBeliefDistribution low, JointBeliefDistribution high);

    [[nodiscard]] const Rational& prior() const noexcept { return prior_; }
    [[nodiscard]] const JointBeliefDistribution& low() const noexcept { return low_; }
    [[nodiscard]] const JointBeliefDistribution& high() const noexcept { return high_; }

    /// (1 - prior) * low + prior * high.
    [[nodiscard]] JointBeliefDistribution blend() const;

private:
    Rational prior_;
    JointBeliefDistribution low_;
    JointBeliefDistribution high_;
};

/// True iff prior * high_i(v) = v * ((1-prior) low_i(v) + prior high_i(v)) for all i, v.
bool is_bayes_consistent(const Rational& prior, const JointBeliefDistribution& low,
                         const JointBeliefDistribution& high);

}  // namespace bft
