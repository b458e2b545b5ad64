#include <map>
#include <tuple>

#include "support.hpp"

#include "bft/catalog.hpp"
#include "bft/feasibility.hpp"
#include "bft/generators.hpp"
#include "bft/implement.hpp"

using bft::ErrorCode;
using bft::JointBeliefDistribution;
using bft::Rational;
using testing::error_of;
using testing::q;

namespace {

struct Draw {
    bool high;
    std::vector<long> signals;
    Rational prob;  // conditional on the state
};

// Push a signal structure forward to posteriors by Bayes' rule. Returns (low, high).
std::pair<JointBeliefDistribution, JointBeliefDistribution> push_forward(const std::vector<Draw>& draws,
                                                                       const Rational& p, std::size_t agents) {
    std::vector<std::map<long, std::pair<Rational, Rational>>> seen(agents);  // (low, high) mass
    for (const auto& d : draws) {
        for (std::size_t i = 0; i < agents; ++i) {
            auto& [lo, hi] = seen[i][d.signals[i]];
            (d.high ? hi : lo) += d.prob * (d.high ? p : Rational(1) - p);
        }
    }
    std::vector<bft::Atom> low;
    std::vector<bft::Atom> high;
    for (const auto& d : draws) {
        std::vector<Rational> x;
        for (std::size_t i = 0; i < agents; ++i) {
            const auto& [lo, hi] = seen[i][d.signals[i]];
            x.push_back(hi / (lo + hi));
        }
        (d.high ? high : low).push_back({bft::BeliefPoint(x), d.prob});
    }
    return {JointBeliefDistribution(agents, low), JointBeliefDistribution(agents, high)};
}

// The geometric counter censored at K+1, listed signal by signal.
std::vector<Draw> email_structure(std::size_t depth) {
    std::vector<Draw> out;
    const auto k_max = static_cast<long>(depth);
    for (long k = 1; k <= k_max; ++k) {
        out.push_back({false, {k, k}, Rational(2) * bft::pow(q(1, 3), static_cast<unsigned>(k))});
        out.push_back({true, {k + 1, k}, bft::pow(q(1, 2), static_cast<unsigned>(k))});
    }
    out.push_back({false, {k_max + 1, k_max + 1}, bft::pow(q(1, 3), static_cast<unsigned>(depth))});
    out.push_back({true, {k_max + 2, k_max + 1}, bft::pow(q(1, 2), static_cast<unsigned>(depth))});
    return out;
}

void check_pair(const bft::ConditionalPair& pair, const JointBeliefDistribution& dist) {
    CHECK(pair.blend() == dist);
    CHECK(bft::is_bayes_consistent(pair.prior(), pair.low(), pair.high()));
}

}  // namespace

TEST_CASE("construct_implementation examples") {
    const JointBeliefDistribution single(1, {{{q(1, 4)}, q(1, 2)}, {{q(3, 4)}, q(1, 2)}});
    const auto pair = bft::construct_implementation(single, q(1, 2));
    CHECK(pair.high() == JointBeliefDistribution(1, {{{q(1, 4)}, q(1, 4)}, {{q(3, 4)}, q(3, 4)}}));
    CHECK(pair.low() == JointBeliefDistribution(1, {{{q(1, 4)}, q(3, 4)}, {{q(3, 4)}, q(1, 4)}}));
    check_pair(pair, single);

    const auto fig = bft::catalog::anti_covariance_optimizer();
    const auto fp = bft::construct_implementation(fig, q(1, 2));
    check_pair(fp, fig);
    std::vector<bft::BeliefPoint> high_support;
    std::vector<bft::BeliefPoint> low_support;
    for (const auto& a : fp.high().atoms()) high_support.push_back(a.point);
    for (const auto& a : fp.low().atoms()) low_support.push_back(a.point);
    CHECK(high_support == std::vector<bft::BeliefPoint>{{q(1, 4), q(1)}, {q(3, 4), q(1, 2)}});
    CHECK(low_support == std::vector<bft::BeliefPoint>{{q(1, 4), q(1, 2)}, {q(3, 4), q(0)}});

    for (std::size_t n = 1; n <= 3; ++n) {
        const auto point = JointBeliefDistribution::point_mass(bft::BeliefPoint(std::vector<Rational>(n, q(2, 7))));
        const auto pp = bft::construct_implementation(point, q(2, 7));
        CHECK(pp.low() == point);
        CHECK(pp.high() == point);
    }

    CHECK(error_of([] { bft::construct_implementation(bft::catalog::perfect_disagreement(), q(1, 2)); }) ==
          ErrorCode::NotFeasible);
    CHECK(error_of([&] { bft::construct_implementation(single, q(1, 3)); }) == ErrorCode::NotFeasible);
    CHECK(error_of([] { bft::implementation_unique(bft::catalog::perfect_disagreement(), q(1, 2)); }) ==
          ErrorCode::NotFeasible);
}

TEST_CASE("uniqueness") {
    bft::gen::Source src(81);
    for (int k = 0; k < 20; ++k) {
        const Rational p = src.fraction(1, 9, 10);
        const auto one = bft::gen::information_structure(src, 1, static_cast<std::size_t>(src.between(1, 5)), p);
        CHECK(bft::implementation_unique(one, p));
    }
    CHECK(bft::implementation_unique(bft::email_extreme_point({q(1, 2), 6}).dist, q(1, 2)));
    const auto binary = bft::catalog::binary_signal(q(2, 3), q(1, 2));
    CHECK_FALSE(bft::implementation_unique(binary, q(1, 2)));
    const auto ranges = bft::implementation_ranges(binary, q(1, 2));
    REQUIRE(ranges.size() == binary.size());
    bool loose = false;
    for (const auto& r : ranges) loose = loose || (r.max && *r.max > r.min);
    CHECK(loose);
}

TEST_CASE("email extreme point values") {
    const auto e = bft::email_extreme_point({q(1, 2), 8});
    CHECK(e.t.size() == 9);
    CHECK(e.w.size() == 8);
    CHECK(e.t[0] == q(0));
    CHECK(e.t[1] == q(9, 13));
    CHECK(e.w[0] == q(3, 7));
    CHECK(e.dist.mass_at({e.t[0], e.w[0]}) == q(1, 3));
    CHECK(e.dist.mass_at({e.t[1], e.w[0]}) == q(1, 4));
    for (const auto& p : {q(1, 3), q(3, 4)}) CHECK(bft::email_extreme_point({p, 3}).t[0] == q(0));

    CHECK(error_of([] { bft::email_extreme_point({q(1, 2), 0}); }) == ErrorCode::InvalidArgument);
    CHECK(error_of([] { bft::email_extreme_point({q(0), 3}); }) == ErrorCode::PriorOutOfRange);
    CHECK(error_of([] { bft::email_extreme_point({q(1), 3}); }) == ErrorCode::PriorOutOfRange);
}

TEST_CASE("email construction matches a direct push-forward") {
    for (const auto& p : {q(1, 2), q(1, 3), q(4, 5)}) {
        for (std::size_t depth = 1; depth <= 8; ++depth) {
            const auto e = bft::email_extreme_point({p, depth});
            const auto [low, high] = push_forward(email_structure(depth), p, 2);
            CHECK(e.pair.low() == low);
            CHECK(e.pair.high() == high);
            CHECK(e.pair.prior() == p);
            check_pair(e.pair, e.dist);
            CHECK(bft::email_identities_hold(e));
            for (std::size_t k = 2; k <= depth + 1; ++k) {
                const Rational h = p * bft::pow(q(1, 2), static_cast<unsigned>(k - 1));
                const Rational l = (Rational(1) - p) * Rational(2) * bft::pow(q(1, 3), static_cast<unsigned>(k));
                CHECK(e.t[k - 1] == h / (h + l));
            }
        }
    }
}

TEST_CASE("email truncations are feasible") {
    for (std::size_t depth = 2; depth <= 8; ++depth) {
        const auto e = bft::email_extreme_point({q(1, 2), depth});
        const auto v = bft::check_feasibility(e.dist);
        REQUIRE(bft::is_feasible(v));
        CHECK(std::get<bft::Feasible>(v).pair.prior() == q(1, 2));
    }
}

TEST_CASE("property: constructed implementations are valid and lie inside the ranges") {
    bft::gen::Source src(82);
    for (int k = 0; k < 40; ++k) {
        const Rational p = src.fraction(1, 9, 10);
        const auto dist = bft::gen::information_structure(src, static_cast<std::size_t>(src.between(1, 3)), 2, p);
        const auto pair = bft::construct_implementation(dist, p);
        check_pair(pair, dist);
        const auto ranges = bft::implementation_ranges(dist, p);
        for (std::size_t x = 0; x < dist.size(); ++x) {
            const Rational qx = pair.high().mass_at(dist.atoms()[x].point);
            CHECK(ranges[x].min <= qx);
            REQUIRE(ranges[x].max);
            CHECK(qx <= *ranges[x].max);
        }
    }
}
