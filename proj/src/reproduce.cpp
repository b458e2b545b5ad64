#include "bft/reproduce.hpp"

#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "bft/agreement.hpp"
#include "bft/catalog.hpp"
#include "bft/error.hpp"
#include "bft/feasibility.hpp"
#include "bft/generators.hpp"
#include "bft/implement.hpp"
#include "bft/persuasion.hpp"
#include "bft/products.hpp"
#include "bft/trade.hpp"

namespace bft {

namespace {

// Every feasibility verdict produced during the run is audited: certificates are
// re-substituted into the program, feasible pairs are blended and re-checked.
struct Audit {
    int certificates = 0;
    int round_trips = 0;
    std::vector<std::string> failures;

    FeasibilityVerdict check(const JointBeliefDistribution& dist, std::optional<Rational> prior = std::nullopt) {
        FeasibilityVerdict verdict = check_feasibility(dist, prior);
        if (const auto* bad = std::get_if<InfeasibleTrade>(&verdict)) {
            ++certificates;
            const Rational p = prior ? *prior : implied_prior(dist);
            const auto program = domination_program(dist, p);
            if (!lp::is_farkas_certificate(program.problem, bad->farkas)) {
                failures.push_back("Farkas re-substitution failed");
            }
            if (evaluate_scheme(dist, bad->certificate).sign() <= 0) {
                failures.push_back("certificate scheme is not profitable");
            }
        } else if (const auto* ok = std::get_if<Feasible>(&verdict)) {
            ++round_trips;
            const JointBeliefDistribution blended = ok->pair.blend();
            if (!(blended == dist)) failures.push_back("pair does not blend back to P");
            if (!is_feasible(check_feasibility(blended, ok->pair.prior()))) {
                failures.push_back("blend of a feasible pair is not feasible");
            }
        }
        return verdict;
    }
};

struct Context {
    const ReproduceOptions& options;
    Audit audit;
};

std::string show(const Rational& r) { return r.str(); }

CriterionResult binary_frontier(Context& ctx) {
    int checked = 0;
    int mismatches = 0;
    std::string first;
    for (const Rational& r : {Rational(3, 5), Rational(2, 3), Rational(3, 4), Rational(4, 5)}) {
        for (long k = 0; k <= 20; ++k) {
            const Rational c(k, 20);
            const bool feasible = is_feasible(ctx.audit.check(catalog::binary_signal(r, c), Rational(1, 2)));
            const bool expected = c >= Rational(2) * r - Rational(1);
            ++checked;
            if (feasible != expected) {
                if (mismatches++ == 0) first = " first mismatch r=" + show(r) + " c=" + show(c);
            }
        }
    }
    return {1, "binary-signal frontier c >= 2r-1", mismatches == 0,
            std::to_string(checked) + " (r,c) pairs, " + std::to_string(mismatches) + " mismatches" + first};
}

CriterionResult perfect_disagreement(Context& ctx) {
    const auto verdict = ctx.audit.check(catalog::perfect_disagreement());
    const auto* bad = std::get_if<InfeasibleTrade>(&verdict);
    const bool ok = bad != nullptr && bad->profit >= Rational(1, 2) &&
                    evaluate_scheme(catalog::perfect_disagreement(), bad->certificate) == bad->profit;
    return {2, "perfect disagreement is infeasible with profit >= 1/2", ok,
            bad ? "certificate profit " + show(bad->profit) : "verdict was not a trade certificate"};
}

CriterionResult min_covariance_criterion(Context& ctx) {
    const Rational half(1, 2);
    const auto objective = IndirectUtility::neg_covariance(half);
    const auto result = persuade_grid(BeliefGrid::uniform(Rational(1, 4), 2), half, objective);
    Rational achieved;
    for (const auto& a : result.optimizer.atoms()) achieved += objective(a.point) * a.mass;
    const bool feasible = is_feasible(ctx.audit.check(result.optimizer, half));
    const bool ok = result.value == Rational(1, 32) && achieved == Rational(1, 32) && feasible;
    return {3, "minimum covariance value 1/32 on the step-1/4 grid", ok,
            "value " + show(result.value) + ", optimizer objective " + show(achieved) +
                (feasible ? ", optimizer feasible" : ", optimizer NOT feasible")};
}

CriterionResult quadratic_polarization(Context& ctx) {
    bool ok = true;
    std::ostringstream detail;
    detail << std::boolalpha;
    const char* sep = "";
    for (const Rational& p : {Rational(1, 2), Rational(1, 3), Rational(1, 5)}) {
        const auto v = IndirectUtility::polarization(2);
        const auto coarse = persuade_grid(BeliefGrid::shared({Rational(0), p, Rational(1)}, 2), p, v);
        const auto fine = persuade_grid(BeliefGrid::uniform(Rational(1, 10), 2, {p}), p, v);
        const Rational target = p * (Rational(1) - p);
        ok = ok && coarse.value == target && fine.value <= coarse.value;
        ok = ok && is_feasible(ctx.audit.check(coarse.optimizer, p));
        detail << sep << "p=" << p << ": {0,p,1} " << coarse.value << ", step 1/10 " << fine.value;
        sep = "; ";
    }
    return {4, "quadratic polarization equals p(1-p)", ok, detail.str()};
}

CriterionResult three_agent_gap(Context& ctx) {
    const ScalarDistribution nu = catalog::three_agent_factor();
    const auto cube = JointBeliefDistribution::power(nu, 3);
    const auto verdict = ctx.audit.check(cube);
    const auto* bad = std::get_if<InfeasibleTrade>(&verdict);
    const auto family = search_signed_indicator_schemes(cube);
    const bool pair_feasible = is_feasible(ctx.audit.check(JointBeliefDistribution::power(nu, 2)));
    const bool ok = bad != nullptr && bad->profit.sign() > 0 && family.profit.sign() <= 0 && pair_feasible;
    std::ostringstream detail;
    detail << std::boolalpha;
    detail << "LP " << (bad ? "infeasible, Farkas scheme profit " + show(bad->profit) : std::string("NOT infeasible"))
           << "; best of " << family.examined << " indicator schemes " << family.profit
           << "; two-agent product " << (pair_feasible ? "feasible" : "NOT feasible");
    return {5, "three-agent product: LP infeasible, no profitable indicator scheme", ok, detail.str()};
}

CriterionResult uniform_cube(Context&) {
    const auto r = uniform_cube_demo(3, Rational(1, 3), Rational(2, 3));
    const bool ok = r.transfer == Rational(6, 9) && r.shortfall == Rational(5, 9) && r.profit == Rational(1, 9);
    return {6, "uniform cube threshold scheme", ok,
            "transfer " + show(r.transfer) + ", shortfall " + show(r.shortfall) + ", profit " + show(r.profit)};
}

CriterionResult checker_equivalence(Context& ctx) {
    gen::Source src(ctx.options.seed);
    int agree = 0;
    int feasible = 0;
    int total = 0;
    for (int k = 0; k < ctx.options.equivalence_instances; ++k) {
        const auto m1 = static_cast<std::size_t>(src.between(1, 4));
        const auto m2 = static_cast<std::size_t>(src.between(1, 4));
        const JointBeliefDistribution dist =
            k % 2 == 0 ? gen::information_structure(src, 2, std::max(m1, m2), src.fraction(1, 9, 10))
                       : gen::equal_means_pair(src, m1, m2);
        const bool lp_ok = is_feasible(ctx.audit.check(dist));
        const bool scan_ok = dawid_check(dist).satisfied();
        ++total;
        feasible += lp_ok ? 1 : 0;
        agree += lp_ok == scan_ok ? 1 : 0;
    }
    return {7, "subset scan agrees with the LP on random two-agent instances", agree == total && total >= 200,
            std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(feasible) +
                " feasible, " + std::to_string(total - feasible) + " infeasible)"};
}

CriterionResult interval_insufficiency(Context& ctx) {
    const auto dist = catalog::interval_counterexample(Rational(1, 10));
    const bool intervals_pass = interval_check(dist).satisfied();
    const auto scan = dawid_check(dist);
    const bool lp_infeasible = !is_feasible(ctx.audit.check(dist));
    const EventPair expected{{Rational(9, 40), Rational(3, 4)}, {Rational(1, 2)}};
    const bool ok = intervals_pass && scan.violation && scan.violation->amount == Rational(1, 800) &&
                    scan.violation->events == expected && lp_infeasible;
    std::ostringstream detail;
    detail << std::boolalpha;
    detail << "interval check " << (intervals_pass ? "passes" : "FAILS");
    if (scan.violation) {
        detail << "; scan violation " << scan.violation->amount << " at A1={";
        const char* sep = "";
        for (const auto& v : scan.violation->events.first) detail << std::exchange(sep, ",") << v;
        detail << "} A2={";
        sep = "";
        for (const auto& v : scan.violation->events.second) detail << std::exchange(sep, ",") << v;
        detail << "}";
    } else {
        detail << "; scan reports no violation";
    }
    return {8, "interval inequalities do not suffice", ok, detail.str()};
}

CriterionResult product_bounds(Context& ctx) {
    const ScalarDistribution nu({{Rational(1, 4), Rational(1, 2)}, {Rational(3, 4), Rational(1, 2)}});
    const bool symmetric = symmetric_product_feasible(nu);
    const bool square = is_feasible(ctx.audit.check(JointBeliefDistribution::power(nu, 2)));
    const auto bound = product_infeasibility_bound(nu);
    const auto six = JointBeliefDistribution::power(nu, 6);
    const bool six_infeasible = !is_feasible(ctx.audit.check(six));
    const bool ok = symmetric && square && bound && bound->n == 6 && six_infeasible && six.size() == 64;
    std::ostringstream detail;
    detail << std::boolalpha;
    detail << "spread criterion " << symmetric << ", square feasible " << square << ", bound n="
           << (bound ? bound->n.get_str() : std::string("none")) << ", 6-fold product (" << six.size()
           << " atoms) infeasible " << six_infeasible;
    return {9, "product bounds for 1/2 d(1/4) + 1/2 d(3/4)", ok, detail.str()};
}

CriterionResult gaussian_threshold(Context&) {
    const bool below = gaussian_product_feasible({0.674489});
    const bool above = gaussian_product_feasible({0.674490});
    std::ostringstream detail;
    detail << std::boolalpha;
    detail.precision(16);
    detail << "quantile(3/4) = " << normal_quantile(0.75) << ", d=0.674489 " << below << ", d=0.674490 " << above;
    return {10, "Gaussian signal threshold", below && !above, detail.str()};
}

CriterionResult email_point(Context& ctx) {
    const Rational half(1, 2);
    const auto e8 = email_extreme_point({half, 8});
    const bool values = e8.t[1] == Rational(9, 13) && e8.w[0] == Rational(3, 7) &&
                        e8.dist.mass_at(BeliefPoint{e8.t[0], e8.w[0]}) == Rational(1, 3) &&
                        e8.dist.mass_at(BeliefPoint{e8.t[1], e8.w[0]}) == Rational(1, 4);
    const bool identities = email_identities_hold(e8);
    const bool feasible = is_feasible(ctx.audit.check(e8.dist, half));
    const bool unique = implementation_unique(email_extreme_point({half, 6}).dist, half);
    std::ostringstream detail;
    detail << std::boolalpha;
    detail << "reference values " << values << ", identities " << identities << ", K=8 feasible " << feasible
           << ", K=6 unique " << unique;
    return {11, "email extreme point", values && identities && feasible && unique, detail.str()};
}

CriterionResult property_suites(Context& ctx) {
    // Grid refinement on random objectives: coarse grid {0,1/2,1} inside the step-1/4 grid.
    gen::Source src(ctx.options.seed ^ 0x9e3779b97f4a7c15ULL);
    const Rational half(1, 2);
    const BeliefGrid coarse = BeliefGrid::uniform(half, 2);
    const BeliefGrid fine = BeliefGrid::uniform(Rational(1, 4), 2);
    int monotone = 0;
    for (int k = 0; k < ctx.options.refinement_objectives; ++k) {
        std::map<BeliefPoint, Rational> table;
        for (const auto& x : fine.points()) table[x] = src.fraction(-10, 10, 10);
        const auto v = IndirectUtility::table(std::move(table));
        const auto a = persuade_grid(coarse, half, v);
        const auto b = persuade_grid(fine, half, v);
        ctx.audit.check(a.optimizer, half);
        ctx.audit.check(b.optimizer, half);
        monotone += b.value >= a.value ? 1 : 0;
    }
    const bool ok = ctx.audit.failures.empty() && monotone == ctx.options.refinement_objectives &&
                    ctx.audit.certificates > 0 && ctx.audit.round_trips > 0;
    std::ostringstream detail;
    detail << std::boolalpha;
    detail << ctx.audit.certificates << " certificates re-verified, " << ctx.audit.round_trips
           << " feasible round trips, " << monotone << "/" << ctx.options.refinement_objectives
           << " refinements monotone";
    if (!ctx.audit.failures.empty()) detail << "; first failure: " << ctx.audit.failures.front();
    return {12, "property suites", ok, detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const ReproduceOptions& options) {
    Context ctx{options, {}};
    const std::vector<std::function<CriterionResult(Context&)>> criteria{
        binary_frontier,     perfect_disagreement,   min_covariance_criterion, quadratic_polarization,
        three_agent_gap,     uniform_cube,           checker_equivalence,      interval_insufficiency,
        product_bounds,      gaussian_threshold,     email_point,              property_suites};
    std::vector<CriterionResult> results;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        try {
            results.push_back(criteria[k](ctx));
        } catch (const std::exception& e) {
            results.push_back({static_cast<int>(k + 1), "criterion " + std::to_string(k + 1), false,
                               std::string("threw: ") + e.what()});
        }
    }
    return results;
}

}  // namespace bft
