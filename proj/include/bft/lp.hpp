#pragma once

// Exact two-phase simplex over the rationals for problems in standard form
//
//     maximize c^T x   subject to   A x = b,  x >= 0.
//
// Infeasible problems come back with a Farkas vector y satisfying y^T A <= 0
// and y^T b > 0, read off the phase-1 duals.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "bft/rational.hpp"

namespace bft::lp {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

enum class Sense { Maximize, Feasibility };

class LpProblem {
public:
    /// Throws Error(DimensionMismatch) if A is not rows x cols with rows = |b| and cols = |c|.
    LpProblem(Matrix a, Vector b, Vector c, Sense sense = Sense::Maximize);

    [[nodiscard]] std::size_t rows() const noexcept { return b_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return c_.size(); }
    [[nodiscard]] const Matrix& a() const noexcept { return a_; }
    [[nodiscard]] const Vector& b() const noexcept { return b_; }
    [[nodiscard]] const Vector& c() const noexcept { return c_; }
    [[nodiscard]] Sense sense() const noexcept { return sense_; }

    /// Same constraints, different objective.
    [[nodiscard]] LpProblem with_objective(Vector c, Sense sense = Sense::Maximize) const;

private:
    Matrix a_;
    Vector b_;
    Vector c_;
    Sense sense_;
};

using Term = std::pair<std::size_t, Rational>;

/// Incremental construction of an LpProblem. Inequalities receive their own slack column.
class LpBuilder {
public:
    std::size_t add_variable(Rational cost = Rational(0));
    void add_equality(std::vector<Term> terms, Rational rhs);
    /// Returns the index of the slack variable.
    std::size_t add_less_equal(std::vector<Term> terms, Rational rhs);
    std::size_t add_greater_equal(std::vector<Term> terms, Rational rhs);

    [[nodiscard]] std::size_t variables() const noexcept { return costs_.size(); }
    [[nodiscard]] std::size_t constraints() const noexcept { return rows_.size(); }
    [[nodiscard]] LpProblem build(Sense sense = Sense::Maximize) const;

private:
    std::vector<Rational> costs_;
    std::vector<std::vector<Term>> rows_;
    std::vector<Rational> rhs_;
};

struct Optimal {
    Vector x;
    Rational value;
    std::vector<std::size_t> basis;
};

struct Infeasible {
    Vector farkas;
};

struct Unbounded {};

using LpOutcome = std::variant<Optimal, Infeasible, Unbounded>;

enum class PivotRule {
    Bland,
    /// Dantzig's rule; falls back to Bland after a run of degenerate pivots.
    LargestCoefficient,
};

struct SolveOptions {
    PivotRule rule = PivotRule::Bland;
    /// When set, every tableau is dumped here as text.
    std::ostream* trace = nullptr;
};

LpOutcome solve(const LpProblem& problem, const SolveOptions& options = {});

/// Exact check of y^T A <= 0 componentwise and y^T b > 0.
bool is_farkas_certificate(const LpProblem& problem, std::span<const Rational> y);

/// Exact check of A x = b and x >= 0.
bool is_feasible_point(const LpProblem& problem, std::span<const Rational> x);

struct VariableRange {
    Rational min;
    std::optional<Rational> max;  ///< nullopt when unbounded above
};

/// Exact extent of x_j over the feasible region. Throws Error(InfeasibleProblem).
VariableRange variable_range(const LpProblem& problem, std::size_t j,
                             const SolveOptions& options = {});

}  // namespace bft::lp
