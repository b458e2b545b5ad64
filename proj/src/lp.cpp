#include "bft/lp.hpp"

#include <algorithm>
#include <ostream>

#include "bft/error.hpp"

namespace bft::lp {

LpProblem::LpProblem(Matrix a, Vector b, Vector c, Sense sense)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), sense_(sense) {
    if (a_.size() != b_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "constraint matrix has " +
                                                      std::to_string(a_.size()) + " rows but b has " +
                                                      std::to_string(b_.size()) + " entries");
    }
    for (std::size_t r = 0; r < a_.size(); ++r) {
        if (a_[r].size() != c_.size()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "row " + std::to_string(r) + " has " + std::to_string(a_[r].size()) +
                            " entries, expected " + std::to_string(c_.size()));
        }
    }
}

LpProblem LpProblem::with_objective(Vector c, Sense sense) const { return LpProblem(a_, b_, std::move(c), sense); }

std::size_t LpBuilder::add_variable(Rational cost) {
    costs_.push_back(std::move(cost));
    return costs_.size() - 1;
}

void LpBuilder::add_equality(std::vector<Term> terms, Rational rhs) {
    for (const auto& [j, coef] : terms) {
        if (j >= costs_.size()) throw Error(ErrorCode::DimensionMismatch, "term references unknown variable");
    }
    rows_.push_back(std::move(terms));
    rhs_.push_back(std::move(rhs));
}

std::size_t LpBuilder::add_less_equal(std::vector<Term> terms, Rational rhs) {
    const std::size_t slack = add_variable();
    terms.emplace_back(slack, Rational(1));
    add_equality(std::move(terms), std::move(rhs));
    return slack;
}

std::size_t LpBuilder::add_greater_equal(std::vector<Term> terms, Rational rhs) {
    const std::size_t slack = add_variable();
    terms.emplace_back(slack, Rational(-1));
    add_equality(std::move(terms), std::move(rhs));
    return slack;
}

LpProblem LpBuilder::build(Sense sense) const {
    Matrix a(rows_.size(), Vector(costs_.size()));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (const auto& [j, coef] : rows_[r]) a[r][j] += coef;
    }
    return LpProblem(std::move(a), rhs_, costs_, sense);
}

namespace {

// Dense tableau; column `width` of each row holds the right-hand side.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t width)
        : rows_(rows, Vector(width + 1)), reduced_(width), basis_(rows), live_(rows, true),
          width_(width) {}

    Rational& at(std::size_t r, std::size_t j) { return rows_[r][j]; }
    Rational& rhs(std::size_t r) { return rows_[r][width_]; }
    Rational& reduced(std::size_t j) { return reduced_[j]; }
    Rational& objective() { return objective_; }
    std::size_t& basis(std::size_t r) { return basis_[r]; }
    [[nodiscard]] bool live(std::size_t r) const { return live_[r]; }
    void retire(std::size_t r) { live_[r] = false; }
    [[nodiscard]] std::size_t rows() const { return rows_.size(); }

    void pivot(std::size_t r, std::size_t j) {
        Vector& prow = rows_[r];
        const Rational inv = Rational(1) / prow[j];
        std::vector<std::size_t> nonzero;
        for (std::size_t c = 0; c <= width_; ++c) {
            if (!prow[c].is_zero()) {
                prow[c] *= inv;
                nonzero.push_back(c);
            }
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || !live_[i] || rows_[i][j].is_zero()) continue;
            const Rational f = rows_[i][j];
            for (std::size_t c : nonzero) rows_[i][c].subtract_product(f, prow[c]);
        }
        if (!reduced_[j].is_zero()) {
            const Rational f = reduced_[j];
            for (std::size_t c : nonzero) {
                if (c < width_) reduced_[c].subtract_product(f, prow[c]);
            }
            objective_ += f * prow[width_];
        }
        basis_[r] = j;
    }

    enum class Status { Optimal, Unbounded };

    // Maximizes over entering columns [0, allowed).
    Status run(std::size_t allowed, const SolveOptions& options) {
        constexpr int kDegenerateLimit = 50;
        bool bland = options.rule == PivotRule::Bland;
        int degenerate_run = 0;
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (reduced_[j].sign() <= 0) continue;
                if (!entering) {
                    entering = j;
                    if (bland) break;
                } else if (reduced_[j] > reduced_[*entering]) {
                    entering = j;
                }
            }
            if (!entering) return Status::Optimal;
            const std::size_t j = *entering;

            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (!live_[i] || rows_[i][j].sign() <= 0) continue;
                Rational ratio = rows_[i][width_] / rows_[i][j];
                if (!leaving || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leaving) return Status::Unbounded;

            if (best_ratio.is_zero()) {
                if (++degenerate_run >= kDegenerateLimit) bland = true;
            } else {
                degenerate_run = 0;
            }
            if (options.trace) {
                *options.trace << "pivot: row " << *leaving << " (basic x" << basis_[*leaving]
                               << ") <- x" << j << "\n";
            }
            pivot(*leaving, j);
            if (options.trace) dump(*options.trace);
        }
    }

    void dump(std::ostream& os) const {
        os << "  z = " << objective_ << " | d =";
        for (const auto& d : reduced_) os << ' ' << d;
        os << '\n';
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!live_[i]) continue;
            os << "  x" << basis_[i] << " |";
            for (std::size_t c = 0; c < width_; ++c) os << ' ' << rows_[i][c];
            os << " | " << rows_[i][width_] << '\n';
        }
    }

private:
    std::vector<Vector> rows_;
    Vector reduced_;
    Rational objective_;
    std::vector<std::size_t> basis_;
    std::vector<bool> live_;
    std::size_t width_;
};

}  // namespace

LpOutcome solve(const LpProblem& problem, const SolveOptions& options) {
    const std::size_t m = problem.rows();
    const std::size_t k = problem.cols();
    const auto& a = problem.a();
    const auto& b = problem.b();

    // Phase 1: rows flipped so b >= 0, one artificial per row, maximize -sum(artificials).
    std::vector<int> row_sign(m, 1);
    Tableau t(m, k + m);
    for (std::size_t r = 0; r < m; ++r) {
        row_sign[r] = b[r].sign() < 0 ? -1 : 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (!a[r][j].is_zero()) t.at(r, j) = row_sign[r] < 0 ? -a[r][j] : a[r][j];
        }
        t.at(r, k + r) = Rational(1);
        t.rhs(r) = row_sign[r] < 0 ? -b[r] : b[r];
        t.basis(r) = k + r;
    }
    for (std::size_t j = 0; j < k; ++j) {
        Rational sum;
        for (std::size_t r = 0; r < m; ++r) sum += t.at(r, j);
        t.reduced(j) = sum;
    }
    for (std::size_t r = 0; r < m; ++r) t.objective() -= t.rhs(r);

    if (options.trace) {
        *options.trace << "phase 1\n";
        t.dump(*options.trace);
    }
    t.run(k + m, options);

    if (t.objective().sign() < 0) {
        Vector farkas(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rational sum;
            for (std::size_t r = 0; r < m; ++r) {
                if (t.basis(r) >= k) sum += t.at(r, k + i);
            }
            farkas[i] = row_sign[i] < 0 ? -sum : sum;
        }
        if (!is_farkas_certificate(problem, farkas)) {
            throw Error(ErrorCode::NotACertificate, "internal: phase-1 duals failed Farkas verification");
        }
        return Infeasible{std::move(farkas)};
    }

    // Drive remaining artificials (all at level zero) out of the basis; rows where
    // that is impossible are linearly dependent on the others.
    for (std::size_t r = 0; r < m; ++r) {
        if (t.basis(r) < k) continue;
        std::optional<std::size_t> column;
        for (std::size_t j = 0; j < k; ++j) {
            if (!t.at(r, j).is_zero()) {
                column = j;
                break;
            }
        }
        if (column) {
            t.pivot(r, *column);
        } else {
            t.retire(r);
        }
    }

    // Phase 2 objective.
    const auto& c = problem.c();
    for (std::size_t j = 0; j < k + m; ++j) t.reduced(j) = j < k ? c[j] : Rational(0);
    t.objective() = Rational(0);
    for (std::size_t r = 0; r < m; ++r) {
        if (!t.live(r)) continue;
        const Rational& cb = c[t.basis(r)];
        if (cb.is_zero()) continue;
        for (std::size_t j = 0; j < k; ++j) {
            if (!t.at(r, j).is_zero()) t.reduced(j).subtract_product(cb, t.at(r, j));
        }
        t.objective() += cb * t.rhs(r);
    }

    if (problem.sense() == Sense::Maximize) {
        if (options.trace) {
            *options.trace << "phase 2\n";
            t.dump(*options.trace);
        }
        if (t.run(k, options) == Tableau::Status::Unbounded) return Unbounded{};
    }

    Optimal result;
    result.x.assign(k, Rational(0));
    for (std::size_t r = 0; r < m; ++r) {
        if (!t.live(r)) continue;
        result.x[t.basis(r)] = t.rhs(r);
        result.basis.push_back(t.basis(r));
    }
    std::sort(result.basis.begin(), result.basis.end());
    for (std::size_t j = 0; j < k; ++j) {
        if (!result.x[j].is_zero()) result.value += c[j] * result.x[j];
    }
    return result;
}

bool is_farkas_certificate(const LpProblem& problem, std::span<const Rational> y) {
    if (y.size() != problem.rows()) return false;
    Rational yb;
    for (std::size_t r = 0; r < problem.rows(); ++r) yb += y[r] * problem.b()[r];
    if (yb.sign() <= 0) return false;
    for (std::size_t j = 0; j < problem.cols(); ++j) {
        Rational ya;
        for (std::size_t r = 0; r < problem.rows(); ++r) {
            if (!y[r].is_zero() && !problem.a()[r][j].is_zero()) ya += y[r] * problem.a()[r][j];
        }
        if (ya.sign() > 0) return false;
    }
    return true;
}

bool is_feasible_point(const LpProblem& problem, std::span<const Rational> x) {
    if (x.size() != problem.cols()) return false;
    for (const auto& v : x) {
        if (v.sign() < 0) return false;
    }
    for (std::size_t r = 0; r < problem.rows(); ++r) {
        Rational lhs;
        for (std::size_t j = 0; j < problem.cols(); ++j) {
            if (!x[j].is_zero()) lhs += problem.a()[r][j] * x[j];
        }
        if (lhs != problem.b()[r]) return false;
    }
    return true;
}

VariableRange variable_range(const LpProblem& problem, std::size_t j, const SolveOptions& options) {
    if (j >= problem.cols()) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
    Vector up(problem.cols());
    up[j] = Rational(1);
    Vector down(problem.cols());
    down[j] = Rational(-1);

    const LpOutcome low = solve(problem.with_objective(std::move(down)), options);
    if (std::holds_alternative<Infeasible>(low)) {
        throw Error(ErrorCode::InfeasibleProblem, "variable_range on an infeasible problem");
    }
    VariableRange range;
    range.min = -std::get<Optimal>(low).value;
    const LpOutcome high = solve(problem.with_objective(std::move(up)), options);
    if (const auto* opt = std::get_if<Optimal>(&high)) range.max = opt->value;
    return range;
}

}  // namespace bft::lp
