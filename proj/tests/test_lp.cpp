#include <sstream>

#include "support.hpp"

#include "bft/feasibility.hpp"
#include "bft/generators.hpp"
#include "bft/lp.hpp"

using bft::ErrorCode;
using bft::Rational;
using testing::error_of;
using testing::q;
namespace lp = bft::lp;

namespace {

// Oracle: every basic solution from column subsets, solved by exact elimination.
struct VertexOracle {
    bool feasible = false;
    Rational best;
};

std::optional<lp::Vector> solve_columns(const lp::LpProblem& p, const std::vector<std::size_t>& cols) {
    const std::size_t m = p.rows();
    const std::size_t k = cols.size();
    lp::Matrix t(m, lp::Vector(k + 1));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < k; ++j) t[r][j] = p.a()[r][cols[j]];
        t[r][k] = p.b()[r];
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_row(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t r = row;
        while (r < m && t[r][j].is_zero()) ++r;
        if (r == m) return std::nullopt;  // dependent columns
        std::swap(t[r], t[row]);
        const Rational inv = Rational(1) / t[row][j];
        for (auto& x : t[row]) x *= inv;
        for (std::size_t s = 0; s < m; ++s) {
            if (s == row || t[s][j].is_zero()) continue;
            const Rational f = t[s][j];
            for (std::size_t c = 0; c <= k; ++c) t[s][c] -= f * t[row][c];
        }
        pivot_row[j] = row++;
    }
    for (std::size_t r = row; r < m; ++r) {
        if (!t[r][k].is_zero()) return std::nullopt;  // inconsistent
    }
    lp::Vector x(p.cols());
    for (std::size_t j = 0; j < k; ++j) x[cols[j]] = t[pivot_row[j]][k];
    return x;
}

VertexOracle enumerate_vertices(const lp::LpProblem& p) {
    VertexOracle o;
    const std::size_t n = p.cols();
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask >> j & 1U) cols.push_back(j);
        }
        if (cols.size() > p.rows()) continue;
        const auto x = solve_columns(p, cols);
        if (!x || !lp::is_feasible_point(p, *x)) continue;
        Rational value;
        for (std::size_t j = 0; j < n; ++j) value += p.c()[j] * (*x)[j];
        if (!o.feasible || value > o.best) o.best = value;
        o.feasible = true;
    }
    return o;
}

// The first row has positive coefficients, so the region is bounded.
lp::LpProblem random_bounded(bft::gen::Source& src) {
    const auto n = static_cast<std::size_t>(src.between(1, 6));
    const auto m = static_cast<std::size_t>(src.between(1, 4));
    lp::Matrix a(m, lp::Vector(n));
    lp::Vector b(m), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[0][j] = src.fraction(1, 3, 1);
        c[j] = src.fraction(-4, 4, 2);
    }
    b[0] = src.fraction(1, 6, 1);
    for (std::size_t r = 1; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) a[r][j] = src.fraction(-3, 3, src.between(1, 2));
        b[r] = src.fraction(-3, 3, 1);
    }
    return {a, b, c};
}

}  // namespace

TEST_CASE("solve examples") {
    const lp::LpProblem single({{q(1)}}, {q(1)}, {q(1)});
    const auto out = lp::solve(single);
    REQUIRE(std::holds_alternative<lp::Optimal>(out));
    CHECK(std::get<lp::Optimal>(out).x == lp::Vector{q(1)});
    CHECK(std::get<lp::Optimal>(out).value == q(1));

    const lp::LpProblem clash({{q(1), q(1)}, {q(1), q(-1)}}, {q(1), q(3)}, {q(0), q(0)}, lp::Sense::Feasibility);
    const auto bad = lp::solve(clash);
    REQUIRE(std::holds_alternative<lp::Infeasible>(bad));
    const auto& y = std::get<lp::Infeasible>(bad).farkas;
    CHECK(lp::is_farkas_certificate(clash, y));
    // Independent re-substitution of the certificate.
    CHECK(y[0] * q(1) + y[1] * q(1) <= q(0));
    CHECK(y[0] * q(1) - y[1] * q(1) <= q(0));
    CHECK(y[0] * q(1) + y[1] * q(3) > q(0));

    const lp::LpProblem flat({{q(1), q(1)}}, {q(1)}, {q(0), q(0)});
    const auto zero = lp::solve(flat);
    REQUIRE(std::holds_alternative<lp::Optimal>(zero));
    CHECK(std::get<lp::Optimal>(zero).value == q(0));
    CHECK(lp::is_feasible_point(flat, std::get<lp::Optimal>(zero).x));

    const lp::LpProblem open({{q(1), q(-1)}}, {q(0)}, {q(1), q(0)});
    CHECK(std::holds_alternative<lp::Unbounded>(lp::solve(open)));
}

TEST_CASE("dimension checks") {
    CHECK(error_of([] { lp::LpProblem({{q(1), q(2)}}, {q(1)}, {q(1)}); }) == ErrorCode::DimensionMismatch);
    CHECK(error_of([] { lp::LpProblem({{q(1)}}, {q(1), q(2)}, {q(1)}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("builder inequalities get slack columns") {
    lp::LpBuilder b;
    const auto x = b.add_variable(q(1));
    const auto y = b.add_variable(q(1));
    b.add_less_equal({{x, q(1)}, {y, q(2)}}, q(4));
    b.add_greater_equal({{x, q(1)}}, q(1));
    b.add_less_equal({{x, q(1)}}, q(3));
    const auto out = lp::solve(b.build());
    REQUIRE(std::holds_alternative<lp::Optimal>(out));
    CHECK(std::get<lp::Optimal>(out).value == q(7, 2));
}

TEST_CASE("variable range examples") {
    const lp::LpProblem simplex({{q(1), q(1)}}, {q(1)}, {q(0), q(0)});
    const auto r = lp::variable_range(simplex, 0);
    CHECK(r.min == q(0));
    CHECK(r.max == q(1));

    const lp::LpProblem pinned({{q(1)}}, {q(1, 3)}, {q(0)});
    const auto p = lp::variable_range(pinned, 0);
    CHECK(p.min == q(1, 3));
    CHECK(p.max == q(1, 3));

    const lp::LpProblem ray({{q(1), q(-1)}}, {q(0)}, {q(0), q(0)});
    CHECK_FALSE(lp::variable_range(ray, 0).max.has_value());

    const lp::LpProblem empty({{q(1)}}, {q(-1)}, {q(0)});
    CHECK(error_of([&] { lp::variable_range(empty, 0); }) == ErrorCode::InfeasibleProblem);

    // Single agent, P = 1/2 d(1/4) + 1/2 d(3/4), p = 1/2: q(v) = v P(v) / p.
    const bft::JointBeliefDistribution single(1, {{{q(1, 4)}, q(1, 2)}, {{q(3, 4)}, q(1, 2)}});
    const auto program = bft::domination_program(single, q(1, 2));
    const auto low = lp::variable_range(program.problem, 0);
    CHECK(low.min == q(1, 4));
    CHECK(low.max == q(1, 4));
}

TEST_CASE("oracle: vertex enumeration matches solve on random bounded programs") {
    bft::gen::Source src(21);
    int feasible = 0;
    int infeasible = 0;
    for (int k = 0; k < 300; ++k) {
        const auto p = random_bounded(src);
        const auto oracle = enumerate_vertices(p);
        const auto out = lp::solve(p);
        const auto dantzig = lp::solve(p, {lp::PivotRule::LargestCoefficient});
        if (oracle.feasible) {
            ++feasible;
            REQUIRE(std::holds_alternative<lp::Optimal>(out));
            const auto& opt = std::get<lp::Optimal>(out);
            CHECK(opt.value == oracle.best);
            CHECK(lp::is_feasible_point(p, opt.x));
            REQUIRE(std::holds_alternative<lp::Optimal>(dantzig));
            CHECK(std::get<lp::Optimal>(dantzig).value == oracle.best);
            // Basic: the support is no larger than the row count.
            std::size_t support = 0;
            for (const auto& x : opt.x) support += x.is_zero() ? 0 : 1;
            CHECK(support <= p.rows());
        } else {
            ++infeasible;
            REQUIRE(std::holds_alternative<lp::Infeasible>(out));
            CHECK(lp::is_farkas_certificate(p, std::get<lp::Infeasible>(out).farkas));
        }
    }
    CHECK(feasible > 50);
    CHECK(infeasible > 20);
}

TEST_CASE("property: degenerate programs with duplicate and zero rows terminate") {
    bft::gen::Source src(22);
    for (int k = 0; k < 200; ++k) {
        auto base = random_bounded(src);
        lp::Matrix a = base.a();
        lp::Vector b = base.b();
        a.push_back(a.front());
        b.push_back(b.front());
        a.emplace_back(base.cols(), q(0));
        const bool poisoned = src.below(4) == 0;
        b.push_back(poisoned ? q(1) : q(0));
        const lp::LpProblem p(a, b, base.c());
        const auto out = lp::solve(p);
        const auto oracle = enumerate_vertices(base);
        if (poisoned || !oracle.feasible) {
            REQUIRE(std::holds_alternative<lp::Infeasible>(out));
            CHECK(lp::is_farkas_certificate(p, std::get<lp::Infeasible>(out).farkas));
        } else {
            REQUIRE(std::holds_alternative<lp::Optimal>(out));
            CHECK(std::get<lp::Optimal>(out).value == oracle.best);
        }
    }
}

TEST_CASE("certificate checks reject non-certificates") {
    const lp::LpProblem p({{q(1), q(1)}}, {q(1)}, {q(0), q(0)});
    const std::vector<Rational> zero{q(0)};
    CHECK_FALSE(lp::is_farkas_certificate(p, zero));
    const std::vector<Rational> neg{q(-1)};
    CHECK_FALSE(lp::is_farkas_certificate(p, neg));
}

TEST_CASE("trace dumps tableaux") {
    std::ostringstream trail;
    const lp::LpProblem p({{q(1), q(1)}}, {q(1)}, {q(1), q(2)});
    const auto out = lp::solve(p, {lp::PivotRule::Bland, &trail});
    REQUIRE(std::holds_alternative<lp::Optimal>(out));
    CHECK(std::get<lp::Optimal>(out).value == q(2));
    CHECK_FALSE(trail.str().empty());
}
