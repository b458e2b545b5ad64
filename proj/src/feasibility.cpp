#include "bft/feasibility.hpp"

#include "bft/error.hpp"

namespace bft {

namespace {

void require_prior(const Rational& p) {
    if (p.sign() <= 0 || p >= Rational(1)) {
        throw Error(ErrorCode::PriorOutOfRange, "prior " + p.str() + " outside (0,1)");
    }
}

}  // namespace

DominationProgram domination_program(const JointBeliefDistribution& dist, const Rational& prior) {
    require_prior(prior);
    const std::size_t atoms = dist.size();
    lp::LpBuilder builder;
    for (std::size_t x = 0; x < 2 * atoms; ++x) builder.add_variable();
    for (std::size_t x = 0; x < atoms; ++x) {
        builder.add_equality({{x, Rational(1)}, {atoms + x, Rational(1)}},
                             dist.atoms()[x].mass / prior);
    }

    std::vector<std::pair<std::size_t, Rational>> marginal_rows;
    for (std::size_t i = 0; i < dist.agents(); ++i) {
        std::map<Rational, std::pair<std::vector<lp::Term>, Rational>> by_value;
        for (std::size_t x = 0; x < atoms; ++x) {
            auto& [terms, mass] = by_value[dist.atoms()[x].point[i]];
            terms.emplace_back(x, Rational(1));
            mass += dist.atoms()[x].mass;
        }
        for (auto& [value, row] : by_value) {
            builder.add_equality(std::move(row.first), value * row.second / prior);
            marginal_rows.emplace_back(i, value);
        }
    }
    return DominationProgram{builder.build(lp::Sense::Feasibility), atoms, std::move(marginal_rows)};
}

TradingScheme certificate_from_farkas(std::span<const Rational> farkas,
                                      const JointBeliefDistribution& dist, const Rational& prior) {
    const DominationProgram program = domination_program(dist, prior);
    if (!lp::is_farkas_certificate(program.problem, farkas)) {
        throw Error(ErrorCode::NotACertificate, "vector is not a Farkas certificate of the domination program");
    }
    Rational largest;
    for (std::size_t r = 0; r < program.marginal_rows.size(); ++r) {
        const Rational m = abs(farkas[program.atoms + r]);
        if (m > largest) largest = m;
    }
    if (largest.is_zero()) {
        throw Error(ErrorCode::NotACertificate, "certificate has no weight on the marginal constraints");
    }
    TradingScheme scheme(dist.agents());
    for (std::size_t r = 0; r < program.marginal_rows.size(); ++r) {
        const auto& [agent, value] = program.marginal_rows[r];
        scheme.set(agent, value, farkas[program.atoms + r] / largest);
    }
    if (evaluate_scheme(dist, scheme).sign() <= 0) {
        throw Error(ErrorCode::NotACertificate, "normalized scheme is not profitable");
    }
    return scheme;
}

FeasibilityVerdict check_feasibility(const JointBeliefDistribution& dist, std::optional<Rational> prior) {
    std::vector<Rational> means = agent_means(dist);
    Rational p;
    if (prior) {
        require_prior(*prior);
        for (const auto& m : means) {
            if (m != *prior) return InfeasibleMartingale{std::move(means), prior};
        }
        p = *prior;
    } else {
        try {
            p = implied_prior(dist);
        } catch (const MartingaleViolation& e) {
            return InfeasibleMartingale{e.means(), std::nullopt};
        }
    }

    const DominationProgram program = domination_program(dist, p);
    const lp::LpOutcome outcome = lp::solve(program.problem);
    if (const auto* bad = std::get_if<lp::Infeasible>(&outcome)) {
        TradingScheme scheme = certificate_from_farkas(bad->farkas, dist, p);
        Rational profit = evaluate_scheme(dist, scheme);
        return InfeasibleTrade{std::move(scheme), std::move(profit), bad->farkas};
    }
    const auto& solution = std::get<lp::Optimal>(outcome);

    std::vector<Atom> high;
    std::vector<Atom> low;
    const Rational q = Rational(1) - p;
    for (std::size_t x = 0; x < program.atoms; ++x) {
        const Atom& atom = dist.atoms()[x];
        const Rational& hx = solution.x[x];
        high.push_back({atom.point, hx});
        low.push_back({atom.point, (atom.mass - p * hx) / q});
    }
    return Feasible{ConditionalPair(p, JointBeliefDistribution(dist.agents(), std::move(low)),
                                    JointBeliefDistribution(dist.agents(), std::move(high)))};
}

}  // namespace bft
