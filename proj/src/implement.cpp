#include "bft/implement.hpp"

#include "bft/error.hpp"
#include "bft/feasibility.hpp"

namespace bft {

namespace {

const Feasible& require_feasible(const FeasibilityVerdict& verdict, const Rational& prior) {
    const auto* ok = std::get_if<Feasible>(&verdict);
    if (ok == nullptr) {
        throw Error(ErrorCode::NotFeasible, "distribution is not " + prior.str() + "-feasible");
    }
    return *ok;
}

}  // namespace

ConditionalPair construct_implementation(const JointBeliefDistribution& dist, const Rational& prior) {
    const FeasibilityVerdict verdict = check_feasibility(dist, prior);
    return require_feasible(verdict, prior).pair;
}

std::vector<lp::VariableRange> implementation_ranges(const JointBeliefDistribution& dist,
                                                     const Rational& prior) {
    require_feasible(check_feasibility(dist, prior), prior);
    const DominationProgram program = domination_program(dist, prior);
    std::vector<lp::VariableRange> ranges;
    ranges.reserve(program.atoms);
    for (std::size_t x = 0; x < program.atoms; ++x) ranges.push_back(lp::variable_range(program.problem, x));
    return ranges;
}

bool implementation_unique(const JointBeliefDistribution& dist, const Rational& prior) {
    for (const auto& r : implementation_ranges(dist, prior)) {
        if (!r.max || *r.max != r.min) return false;
    }
    return true;
}

EmailExtremePoint email_extreme_point(const EmailExtremeSpec& spec) {
    const Rational& p = spec.prior;
    const std::size_t depth = spec.depth;
    if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth K must be at least 1");
    if (p.sign() <= 0 || p >= Rational(1)) {
        throw Error(ErrorCode::PriorOutOfRange, "prior " + p.str() + " outside (0,1)");
    }
    const Rational q = Rational(1) - p;
    const Rational half(1, 2);
    const Rational third(1, 3);
    const auto posterior = [&](const Rational& high, const Rational& low) { return p * high / (p * high + q * low); };

    std::vector<Rational> t{Rational(0)};
    std::vector<Rational> w;
    for (std::size_t k = 1; k <= depth + 1; ++k) {
        const auto ku = static_cast<unsigned>(k);
        if (k >= 2) t.push_back(posterior(pow(half, ku - 1), Rational(2) * pow(third, ku)));
        if (k <= depth) w.push_back(posterior(pow(half, ku), Rational(2) * pow(third, ku)));
    }

    // Censored signals: agent 1 at K+1 and agent 2 at K+1 both see low mass 3^-K
    // against high mass 2^-K.
    const auto ku = static_cast<unsigned>(depth);
    const Rational tail = posterior(pow(half, ku), pow(third, ku));

    std::vector<Atom> low;
    std::vector<Atom> high;
    for (std::size_t k = 1; k <= depth; ++k) {
        const auto kk = static_cast<unsigned>(k);
        low.push_back({{t[k - 1], w[k - 1]}, Rational(2) * pow(third, kk)});
        high.push_back({{k < depth ? t[k] : tail, w[k - 1]}, pow(half, kk)});
    }
    low.push_back({{tail, tail}, pow(third, ku)});
    high.push_back({{Rational(1), tail}, pow(half, ku)});

    ConditionalPair pair(p, JointBeliefDistribution(2, std::move(low)), JointBeliefDistribution(2, std::move(high)));
    JointBeliefDistribution dist = pair.blend();
    return EmailExtremePoint{std::move(dist), std::move(pair), std::move(t), std::move(w)};
}

bool email_identities_hold(const EmailExtremePoint& point) {
    const auto& t = point.t;
    const auto& w = point.w;
    const std::size_t depth = w.size();
    const auto mass = [&](const Rational& a, const Rational& b) { return point.dist.mass_at(BeliefPoint{a, b}); };
    for (std::size_t k = 2; k + 1 <= depth; ++k) {
        const Rational& tk = t[k - 1];
        if (tk * mass(tk, w[k - 1]) != (Rational(1) - tk) * mass(tk, w[k - 2])) return false;
    }
    for (std::size_t k = 1; k + 1 <= depth; ++k) {
        const Rational& wk = w[k - 1];
        if (wk * mass(t[k - 1], wk) != (Rational(1) - wk) * mass(t[k], wk)) return false;
    }
    return true;
}

}  // namespace bft
