#include <cmath>

#include "support.hpp"

#include "bft/catalog.hpp"
#include "bft/feasibility.hpp"
#include "bft/generators.hpp"
#include "bft/persuasion.hpp"

using bft::BeliefGrid;
using bft::ErrorCode;
using bft::IndirectUtility;
using bft::Rational;
using testing::error_of;
using testing::q;

namespace {

Rational expected(const bft::JointBeliefDistribution& dist, const IndirectUtility& v) {
    Rational total;
    for (const auto& a : dist.atoms()) total += a.mass * v(a.point);
    return total;
}

void check_result(const bft::PersuasionResult& r, const BeliefGrid& grid, const Rational& prior,
                  const IndirectUtility& v) {
    CHECK(expected(r.optimizer, v) == r.value);
    CHECK(r.pair.blend() == r.optimizer);
    CHECK(r.pair.prior() == prior);
    for (const auto& a : r.optimizer.atoms()) CHECK(grid.contains(a.point));
    CHECK(r.optimizer.size() <= r.constraints);
    const auto verdict = bft::check_feasibility(r.optimizer, prior);
    CHECK(bft::is_feasible(verdict));
}

}  // namespace

TEST_CASE("grid construction") {
    const auto g = BeliefGrid::uniform(q(1, 4), 2);
    CHECK(g.values(0) == std::vector<Rational>{q(0), q(1, 4), q(1, 2), q(3, 4), q(1)});
    CHECK(g.points().size() == 25);
    CHECK(g.points()[1] == bft::BeliefPoint{q(0), q(1, 4)});
    CHECK(g.contains({q(3, 4), q(1, 4)}));
    CHECK_FALSE(g.contains({q(1, 3), q(1, 4)}));

    const auto odd = BeliefGrid::uniform(q(2, 5), 1, {q(1, 3)});
    CHECK(odd.values(0) == std::vector<Rational>{q(0), q(1, 3), q(2, 5), q(4, 5), q(1)});
    const BeliefGrid messy({{q(1), q(0), q(1)}, {q(1, 2)}});
    CHECK(messy.values(0) == std::vector<Rational>{q(0), q(1)});

    CHECK(error_of([] { BeliefGrid({}); }) == ErrorCode::InvalidGrid);
    CHECK(error_of([] { BeliefGrid({{q(0)}, {}}); }) == ErrorCode::InvalidGrid);
    CHECK(error_of([] { BeliefGrid({{q(3, 2)}}); }) == ErrorCode::InvalidGrid);
    CHECK(error_of([] { BeliefGrid::uniform(q(0), 2); }) == ErrorCode::InvalidGrid);
}

TEST_CASE("persuade_grid examples") {
    const auto quarter = BeliefGrid::uniform(q(1, 4), 2);
    const auto anti = IndirectUtility::neg_covariance(q(1, 2));
    const auto r1 = bft::persuade_grid(quarter, q(1, 2), anti);
    CHECK(r1.value == q(1, 32));
    check_result(r1, quarter, q(1, 2), anti);
    CHECK(expected(bft::catalog::anti_covariance_optimizer(), anti) == q(1, 32));

    const auto coarse = BeliefGrid::shared({q(0), q(1, 3), q(1)}, 2);
    const auto square = IndirectUtility::polarization(2);
    const auto r2 = bft::persuade_grid(coarse, q(1, 3), square);
    CHECK(r2.value == q(2, 9));
    check_result(r2, coarse, q(1, 3), square);

    const auto flat = IndirectUtility::constant(q(7, 3));
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto g = BeliefGrid::shared({q(0), q(2, 5), q(1)}, n);
        const auto r = bft::persuade_grid(g, q(2, 5), flat);
        CHECK(r.value == q(7, 3));
        check_result(r, g, q(2, 5), flat);
    }
}

TEST_CASE("table objectives") {
    std::map<bft::BeliefPoint, Rational> values;
    const auto g = BeliefGrid::shared({q(0), q(1, 2), q(1)}, 2);
    for (const auto& x : g.points()) values[x] = x[0] == x[1] ? q(1) : q(0);
    const auto agree = IndirectUtility::table(values);
    // Public revelation makes the agents agree always.
    CHECK(bft::persuade_grid(g, q(1, 2), agree).value == q(1));

    values.erase(bft::BeliefPoint{q(0), q(1)});
    const auto partial = IndirectUtility::table(values);
    CHECK(error_of([&] { (void)partial({q(0), q(1)}); }) == ErrorCode::MissingObjectiveValue);
    CHECK(error_of([&] { bft::persuade_grid(g, q(1, 2), partial); }) == ErrorCode::MissingObjectiveValue);
}

TEST_CASE("persuade_grid errors") {
    const auto g = BeliefGrid::uniform(q(1, 2), 2);
    const auto square = IndirectUtility::polarization(2);
    CHECK(error_of([&] { bft::persuade_grid(g, q(0), square); }) == ErrorCode::PriorOutOfRange);
    CHECK(error_of([&] { bft::persuade_grid(g, q(1), square); }) == ErrorCode::PriorOutOfRange);
    CHECK(error_of([&] { bft::persuade_grid(BeliefGrid::uniform(q(1, 2), 3), q(1, 2), square); }) ==
          ErrorCode::WrongArity);
    CHECK(error_of([&] { bft::persuade_grid(BeliefGrid::shared({q(1, 4), q(1, 3)}, 2), q(1, 2), square); }) ==
          ErrorCode::GridExcludesFeasibility);
    CHECK(error_of([] { IndirectUtility::polarization(0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("closed forms") {
    CHECK(std::get<Rational>(bft::closed_form_polarization(q(2), q(1, 3))) == q(2, 9));
    CHECK(std::get<Rational>(bft::closed_form_polarization(q(1), q(1, 2))) == q(1, 2));
    CHECK(std::get<Rational>(bft::closed_form_polarization(q(1), q(1, 3))) == q(4, 9));
    CHECK(std::holds_alternative<bft::Unsupported>(bft::closed_form_polarization(q(3), q(1, 2))));
    CHECK(std::holds_alternative<bft::Unsupported>(bft::closed_form_polarization(q(3, 2), q(1, 3))));
    const auto root = std::get<bft::SymbolicPower>(bft::closed_form_polarization(q(1, 2), q(1, 2)));
    CHECK(root.base == q(1, 2));
    CHECK(root.exponent == q(1, 2));
    CHECK(root.approx == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(error_of([] { bft::closed_form_polarization(q(0), q(1, 2)); }) == ErrorCode::InvalidArgument);
    CHECK(error_of([] { bft::closed_form_polarization(q(1), q(1)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("closed forms match the grid program") {
    for (const auto& p : {q(1, 2), q(1, 3), q(2, 5), q(5, 6)}) {
        const auto g = BeliefGrid::shared({q(0), p, q(1)}, 2);
        for (unsigned a : {1U, 2U}) {
            const auto known = std::get<Rational>(bft::closed_form_polarization(Rational(static_cast<long>(a)), p));
            CHECK(bft::persuade_grid(g, p, IndirectUtility::polarization(a)).value == known);
        }
    }
    // For a = 3 revealing to one agent is beaten by the three-point distribution.
    const auto cube = IndirectUtility::polarization(3);
    const auto g = BeliefGrid::shared({q(0), q(1, 2), q(2, 3), q(1)}, 2);
    const auto r = bft::persuade_grid(g, q(1, 2), cube);
    CHECK(r.value >= expected(bft::catalog::three_point_extreme(), cube));
    CHECK(expected(bft::catalog::three_point_extreme(), cube) == q(4, 27));
    CHECK(r.value > q(1, 8));
}

TEST_CASE("min_covariance") {
    CHECK(bft::min_covariance(q(1, 2), BeliefGrid::uniform(q(1, 4), 2)) == q(-1, 32));
    const Rational coarse = bft::min_covariance(q(1, 2), BeliefGrid::uniform(q(1, 2), 2));
    CHECK(coarse >= q(-1, 32));
    CHECK(bft::min_covariance(q(1, 2), BeliefGrid::shared({q(1, 2)}, 2)) == q(0));
    CHECK(bft::min_covariance(q(1, 2), BeliefGrid::uniform(q(1, 8), 2)) == q(-1, 32));
}

TEST_CASE("property: refining the grid never lowers the value") {
    const std::vector<IndirectUtility> objectives{
        IndirectUtility::polarization(1), IndirectUtility::polarization(2), IndirectUtility::polarization(3),
        IndirectUtility::neg_covariance(q(1, 2)), IndirectUtility::neg_covariance(q(1, 3))};
    for (const auto& p : {q(1, 2), q(1, 3)}) {
        for (const auto& v : objectives) {
            Rational last(-1000);
            for (const auto& step : {q(1, 2), q(1, 4), q(1, 8)}) {
                const auto g = BeliefGrid::uniform(step, 2, {p});
                const auto r = bft::persuade_grid(g, p, v);
                CHECK(r.value >= last);
                last = r.value;
                check_result(r, g, p, v);
                if (v.name() == IndirectUtility::polarization(2).name()) CHECK(r.value == p * (Rational(1) - p));
                if (v.name() == IndirectUtility::neg_covariance(q(1, 2)).name() && p == q(1, 2)) {
                    CHECK(r.value <= q(1, 32));
                }
            }
        }
    }
}

TEST_CASE("property: any feasible distribution on the grid is a lower bound") {
    bft::gen::Source src(71);
    const auto square = IndirectUtility::polarization(2);
    const auto anti = IndirectUtility::neg_covariance(q(1, 2));
    for (int k = 0; k < 40; ++k) {
        const Rational p = src.fraction(1, 5, 6);
        const auto dist = bft::gen::information_structure(src, 2, 3, p);
        std::vector<std::vector<Rational>> values;
        for (std::size_t i = 0; i < 2; ++i) values.push_back(bft::marginal(dist, i).support());
        const BeliefGrid g(values);
        for (const auto* v : {&square, &anti}) {
            const auto r = bft::persuade_grid(g, p, *v);
            CHECK(r.value >= expected(dist, *v));
            check_result(r, g, p, *v);
        }
        CHECK(bft::persuade_grid(g, p, square).value <= p * (Rational(1) - p));
    }
}
