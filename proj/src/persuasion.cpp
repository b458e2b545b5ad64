#include "bft/persuasion.hpp"

#include <algorithm>
#include <cmath>

#include "bft/error.hpp"
#include "bft/lp.hpp"

namespace bft {

BeliefGrid::BeliefGrid(std::vector<std::vector<Rational>> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorCode::InvalidGrid, "grid needs at least one agent");
    for (auto& v : values_) {
        if (v.empty()) throw Error(ErrorCode::InvalidGrid, "grid has an agent without values");
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        if (v.front().sign() < 0 || v.back() > Rational(1)) {
            throw Error(ErrorCode::InvalidGrid, "grid values must lie in [0,1]");
        }
    }
}

BeliefGrid BeliefGrid::shared(std::vector<Rational> values, std::size_t agents) {
    return BeliefGrid(std::vector<std::vector<Rational>>(agents, values));
}

BeliefGrid BeliefGrid::uniform(const Rational& step, std::size_t agents, std::vector<Rational> extra) {
    if (step.sign() <= 0) throw Error(ErrorCode::InvalidGrid, "grid step must be positive");
    std::vector<Rational> values = std::move(extra);
    for (Rational x; x < Rational(1); x += step) values.push_back(x);
    values.emplace_back(1);
    return shared(std::move(values), agents);
}

std::vector<BeliefPoint> BeliefGrid::points() const {
    std::vector<BeliefPoint> out;
    std::vector<std::size_t> idx(values_.size(), 0);
    for (;;) {
        std::vector<Rational> coords;
        for (std::size_t i = 0; i < values_.size(); ++i) coords.push_back(values_[i][idx[i]]);
        out.emplace_back(std::move(coords));
        std::size_t pos = values_.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < values_[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

bool BeliefGrid::contains(const BeliefPoint& point) const {
    if (point.size() != values_.size()) return false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::binary_search(values_[i].begin(), values_[i].end(), point[i])) return false;
    }
    return true;
}

IndirectUtility IndirectUtility::polarization(unsigned exponent) {
    if (exponent == 0) throw Error(ErrorCode::InvalidArgument, "polarization exponent must be positive");
    return IndirectUtility(
        "polarization(" + std::to_string(exponent) + ")",
        [exponent](const BeliefPoint& x) { return pow(abs(x[0] - x[1]), exponent); }, 2);
}

IndirectUtility IndirectUtility::neg_covariance(const Rational& center) {
    return IndirectUtility(
        "neg_covariance(" + center.str() + ")",
        [center](const BeliefPoint& x) { return -((x[0] - center) * (x[1] - center)); }, 2);
}

IndirectUtility IndirectUtility::constant(const Rational& c) {
    return IndirectUtility("constant(" + c.str() + ")", [c](const BeliefPoint&) { return c; });
}

IndirectUtility IndirectUtility::table(std::map<BeliefPoint, Rational> values) {
    std::optional<std::size_t> arity;
    if (!values.empty()) arity = values.begin()->first.size();
    return IndirectUtility(
        "table",
        [values = std::move(values)](const BeliefPoint& x) {
            const auto it = values.find(x);
            if (it == values.end()) {
                throw Error(ErrorCode::MissingObjectiveValue, "objective table has no value at " + x.str());
            }
            return it->second;
        },
        arity);
}

PersuasionResult persuade_grid(const BeliefGrid& grid, const Rational& prior, const IndirectUtility& v) {
    if (prior.sign() <= 0 || prior >= Rational(1)) {
        throw Error(ErrorCode::PriorOutOfRange, "prior " + prior.str() + " outside (0,1)");
    }
    if (v.arity() && *v.arity() != grid.agents()) {
        throw Error(ErrorCode::WrongArity, "objective " + v.name() + " expects " + std::to_string(*v.arity()) +
                                               " agents, grid has " + std::to_string(grid.agents()));
    }
    const Rational q = Rational(1) - prior;
    const std::vector<BeliefPoint> points = grid.points();
    const std::size_t m = points.size();

    lp::LpBuilder builder;
    std::vector<Rational> utility;
    utility.reserve(m);
    for (const auto& x : points) utility.push_back(v(x));
    for (std::size_t t = 0; t < m; ++t) builder.add_variable(q * utility[t]);      // low
    for (std::size_t t = 0; t < m; ++t) builder.add_variable(prior * utility[t]);  // high

    std::vector<lp::Term> low_total;
    std::vector<lp::Term> high_total;
    for (std::size_t t = 0; t < m; ++t) {
        low_total.emplace_back(t, Rational(1));
        high_total.emplace_back(m + t, Rational(1));
    }
    builder.add_equality(std::move(low_total), Rational(1));
    builder.add_equality(std::move(high_total), Rational(1));
    std::size_t rows = 2;

    // p (1 - v) P^h_i(v) = v (1 - p) P^l_i(v) for every agent i and grid value v.
    for (std::size_t i = 0; i < grid.agents(); ++i) {
        for (const auto& value : grid.values(i)) {
            const Rational high_coef = prior * (Rational(1) - value);
            const Rational low_coef = -(value * q);
            std::vector<lp::Term> terms;
            for (std::size_t t = 0; t < m; ++t) {
                if (points[t][i] != value) continue;
                if (!low_coef.is_zero()) terms.emplace_back(t, low_coef);
                if (!high_coef.is_zero()) terms.emplace_back(m + t, high_coef);
            }
            builder.add_equality(std::move(terms), Rational(0));
            ++rows;
        }
    }

    const lp::LpOutcome outcome = lp::solve(builder.build(lp::Sense::Maximize));
    const auto* best = std::get_if<lp::Optimal>(&outcome);
    if (best == nullptr) {
        throw Error(ErrorCode::GridExcludesFeasibility,
                    "no grid-supported distribution is feasible for prior " + prior.str());
    }

    std::vector<Atom> low;
    std::vector<Atom> high;
    for (std::size_t t = 0; t < m; ++t) {
        if (!best->x[t].is_zero()) low.push_back({points[t], best->x[t]});
        if (!best->x[m + t].is_zero()) high.push_back({points[t], best->x[m + t]});
    }
    ConditionalPair pair(prior, JointBeliefDistribution(grid.agents(), std::move(low)),
                         JointBeliefDistribution(grid.agents(), std::move(high)));
    JointBeliefDistribution optimizer = pair.blend();
    return PersuasionResult{best->value, std::move(optimizer), std::move(pair), rows};
}

PolarizationValue closed_form_polarization(const Rational& exponent, const Rational& prior) {
    if (exponent.sign() <= 0 || prior.sign() <= 0 || prior >= Rational(1)) {
        throw Error(ErrorCode::InvalidArgument, "need exponent > 0 and prior in (0,1)");
    }
    const Rational spread = prior * (Rational(1) - prior);
    if (exponent == Rational(2)) return spread;
    if (exponent == Rational(1)) return Rational(2) * spread;
    if (prior == Rational(1, 2) && exponent < Rational(2)) {
        // Only a = 1 has a rational value here, and it is handled above.
        return SymbolicPower{Rational(1, 2), exponent, std::pow(0.5, exponent.to_double())};
    }
    return Unsupported{};
}

Rational min_covariance(const Rational& prior, const BeliefGrid& grid) {
    return -persuade_grid(grid, prior, IndirectUtility::neg_covariance(prior)).value;
}

}  // namespace bft
