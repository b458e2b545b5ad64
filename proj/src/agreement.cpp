#include "bft/agreement.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "bft/error.hpp"

namespace bft {

namespace {

void require_two_agents(const JointBeliefDistribution& dist) {
    if (dist.agents() != 2) {
        throw Error(ErrorCode::WrongArity,
                    "expected a 2-agent distribution, got " + std::to_string(dist.agents()));
    }
}

// Support values, marginal masses and the joint mass table of a 2-agent distribution.
struct Table {
    std::vector<Rational> s1, s2;
    std::vector<Rational> p1, p2;
    std::vector<std::vector<Rational>> joint;  // joint[v][w]

    explicit Table(const JointBeliefDistribution& dist) {
        s1 = marginal(dist, 0).support();
        s2 = marginal(dist, 1).support();
        p1.assign(s1.size(), Rational(0));
        p2.assign(s2.size(), Rational(0));
        joint.assign(s1.size(), std::vector<Rational>(s2.size()));
        for (const auto& a : dist.atoms()) {
            const auto v = index(s1, a.point[0]);
            const auto w = index(s2, a.point[1]);
            joint[v][w] += a.mass;
            p1[v] += a.mass;
            p2[w] += a.mass;
        }
    }

    static std::size_t index(const std::vector<Rational>& s, const Rational& x) {
        return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), x) - s.begin());
    }

    [[nodiscard]] Table swapped() const {
        Table t = *this;
        std::swap(t.s1, t.s2);
        std::swap(t.p1, t.p2);
        t.joint.assign(s2.size(), std::vector<Rational>(s1.size()));
        for (std::size_t v = 0; v < s1.size(); ++v) {
            for (std::size_t w = 0; w < s2.size(); ++w) t.joint[w][v] = joint[v][w];
        }
        return t;
    }

private:
    Table() = default;
};

struct Candidate {
    std::vector<bool> a1, a2;
    Rational amount;
};

// Left violation int_A1 x dP1 - int_A2 x dP2 - P(A1 x not A2), maximized over all events.
Candidate scan_left(const Table& t, std::uint64_t& examined) {
    const std::size_t m1 = t.s1.size();
    const std::size_t m2 = t.s2.size();
    Candidate best{std::vector<bool>(m1), std::vector<bool>(m2), Rational(0)};

    if (m2 <= m1) {
        // Enumerate A2; include v in A1 iff v P1(v) - P({v} x not A2) > 0.
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m2); ++mask, ++examined) {
            std::vector<bool> a2(m2);
            Rational amount;
            for (std::size_t w = 0; w < m2; ++w) {
                a2[w] = (mask >> w & 1U) != 0;
                if (a2[w]) amount -= t.s2[w] * t.p2[w];
            }
            std::vector<bool> a1(m1);
            for (std::size_t v = 0; v < m1; ++v) {
                Rational term = t.s1[v] * t.p1[v];
                for (std::size_t w = 0; w < m2; ++w) {
                    if (!a2[w]) term -= t.joint[v][w];
                }
                if (term.sign() > 0) {
                    a1[v] = true;
                    amount += term;
                }
            }
            if (amount > best.amount) best = {std::move(a1), std::move(a2), std::move(amount)};
        }
    } else {
        // Enumerate A1; include w in A2 iff P(A1 x {w}) - w P2(w) > 0.
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m1); ++mask, ++examined) {
            std::vector<bool> a1(m1);
            Rational amount;
            for (std::size_t v = 0; v < m1; ++v) {
                a1[v] = (mask >> v & 1U) != 0;
                if (a1[v]) amount += t.s1[v] * t.p1[v] - t.p1[v];
            }
            std::vector<bool> a2(m2);
            for (std::size_t w = 0; w < m2; ++w) {
                Rational term = -(t.s2[w] * t.p2[w]);
                for (std::size_t v = 0; v < m1; ++v) {
                    if (a1[v]) term += t.joint[v][w];
                }
                if (term.sign() > 0) {
                    a2[w] = true;
                    amount += term;
                }
            }
            if (amount > best.amount) best = {std::move(a1), std::move(a2), std::move(amount)};
        }
    }
    return best;
}

std::set<Rational> to_set(const std::vector<Rational>& support, const std::vector<bool>& mask) {
    std::set<Rational> out;
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (mask[k]) out.insert(support[k]);
    }
    return out;
}

Rational left_amount(const Table& t, const std::vector<bool>& a1, const std::vector<bool>& a2) {
    Rational amount;
    for (std::size_t v = 0; v < t.s1.size(); ++v) {
        if (!a1[v]) continue;
        amount += t.s1[v] * t.p1[v];
        for (std::size_t w = 0; w < t.s2.size(); ++w) {
            if (!a2[w]) amount -= t.joint[v][w];
        }
    }
    for (std::size_t w = 0; w < t.s2.size(); ++w) {
        if (a2[w]) amount -= t.s2[w] * t.p2[w];
    }
    return amount;
}

std::vector<std::vector<bool>> anchored_intervals(std::size_t m) {
    std::vector<std::vector<bool>> out;
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<bool> lower(m), upper(m);
        for (std::size_t k = 0; k < m; ++k) {
            lower[k] = k <= a;
            upper[k] = k >= a;
        }
        out.push_back(std::move(lower));
        out.push_back(std::move(upper));
    }
    return out;
}

}  // namespace

AgreementReport agreement_bounds(const JointBeliefDistribution& dist, const EventPair& events) {
    require_two_agents(dist);
    AgreementReport r;
    for (const auto& a : dist.atoms()) {
        const bool in1 = events.first.contains(a.point[0]);
        const bool in2 = events.second.contains(a.point[1]);
        if (in1) r.mid += a.point[0] * a.mass;
        if (in2) r.mid -= a.point[1] * a.mass;
        if (in1 && !in2) r.lhs += a.mass;
        if (!in1 && in2) r.rhs -= a.mass;
    }
    r.satisfied = r.lhs >= r.mid && r.mid >= r.rhs;
    return r;
}

ScanResult dawid_check(const JointBeliefDistribution& dist, std::size_t max_scan) {
    require_two_agents(dist);
    const auto means = agent_means(dist);
    if (means[0] != means[1]) throw MartingaleViolation(means);

    const Table table(dist);
    const std::size_t smaller = std::min(table.s1.size(), table.s2.size());
    if (smaller > max_scan) {
        throw Error(ErrorCode::SubsetScanTooLarge,
                    "smaller marginal support has " + std::to_string(smaller) +
                        " values, above the subset-scan limit of " + std::to_string(max_scan) +
                        "; use the LP feasibility check instead");
    }

    ScanResult result;
    const Candidate left = scan_left(table, result.events_examined);
    // The right inequality is the left one with the agents' roles exchanged.
    const Table mirrored = table.swapped();
    const Candidate right = scan_left(mirrored, result.events_examined);

    if (left.amount.sign() > 0 && left.amount >= right.amount) {
        result.violation = AgreementViolation{
            {to_set(table.s1, left.a1), to_set(table.s2, left.a2)}, left.amount, Inequality::Left};
    } else if (right.amount.sign() > 0) {
        result.violation = AgreementViolation{
            {to_set(table.s1, right.a2), to_set(table.s2, right.a1)}, right.amount, Inequality::Right};
    }
    return result;
}

ScanResult interval_check(const JointBeliefDistribution& dist) {
    require_two_agents(dist);
    const Table table(dist);
    const Table mirrored = table.swapped();
    const auto first = anchored_intervals(table.s1.size());
    const auto second = anchored_intervals(table.s2.size());

    ScanResult result;
    Rational best;
    for (const auto& a1 : first) {
        for (const auto& a2 : second) {
            ++result.events_examined;
            const std::array<std::pair<Rational, Inequality>, 2> amounts{
                std::pair{left_amount(table, a1, a2), Inequality::Left},
                std::pair{left_amount(mirrored, a2, a1), Inequality::Right}};
            for (const auto& [amount, side] : amounts) {
                if (amount > best) {
                    best = amount;
                    result.violation = AgreementViolation{
                        {to_set(table.s1, a1), to_set(table.s2, a2)}, amount, side};
                }
            }
        }
    }
    return result;
}

}  // namespace bft
