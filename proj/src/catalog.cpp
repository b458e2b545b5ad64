#include "bft/catalog.hpp"

#include "bft/error.hpp"

namespace bft::catalog {

JointBeliefDistribution binary_signal(const Rational& r, const Rational& c) {
    if (r < Rational(1, 2) || r > Rational(1) || c.sign() < 0 || c > Rational(1)) {
        throw Error(ErrorCode::InvalidArgument, "binary signal needs 1/2 <= r <= 1 and 0 <= c <= 1");
    }
    const Rational s = Rational(1) - r;
    const Rational same = c / Rational(2);
    const Rational cross = (Rational(1) - c) / Rational(2);
    return JointBeliefDistribution(2, {{{r, r}, same}, {{s, s}, same}, {{s, r}, cross}, {{r, s}, cross}});
}

JointBeliefDistribution perfect_disagreement() {
    return JointBeliefDistribution(2, {{{0, 1}, Rational(1, 2)}, {{1, 0}, Rational(1, 2)}});
}

JointBeliefDistribution interval_counterexample(const Rational& eps) {
    if (eps.sign() <= 0 || eps >= Rational(1)) {
        throw Error(ErrorCode::InvalidArgument, "eps must lie in (0,1)");
    }
    const Rational light_x = Rational(1, 2) - eps / Rational(4);
    return JointBeliefDistribution(2, {{{(Rational(1) - eps) / Rational(4), Rational(1, 2)}, (Rational(1) - eps) / Rational(2)},
                                       {{Rational(3, 4), Rational(1, 2)}, Rational(1, 2)},
                                       {{light_x, 0}, eps / Rational(4)},
                                       {{light_x, 1}, eps / Rational(4)}});
}

JointBeliefDistribution anti_covariance_optimizer() {
    return JointBeliefDistribution(2, {{{Rational(3, 4), 0}, Rational(1, 8)},
                                       {{Rational(3, 4), Rational(1, 2)}, Rational(3, 8)},
                                       {{Rational(1, 4), 1}, Rational(1, 8)},
                                       {{Rational(1, 4), Rational(1, 2)}, Rational(3, 8)}});
}

JointBeliefDistribution three_point_extreme() {
    return JointBeliefDistribution(2, {{{0, Rational(2, 3)}, Rational(1, 4)},
                                       {{Rational(2, 3), 0}, Rational(1, 4)},
                                       {{Rational(2, 3), Rational(2, 3)}, Rational(1, 2)}});
}

ScalarDistribution three_agent_factor() {
    return ScalarDistribution({{Rational(3, 14), Rational(1, 3)},
                               {Rational(1, 2), Rational(1, 3)},
                               {Rational(11, 14), Rational(1, 3)}});
}

}  // namespace bft::catalog
