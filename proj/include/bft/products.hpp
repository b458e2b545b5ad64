#pragma once

// Product distributions nu x ... x nu. For symmetric nu, nu x nu is feasible iff the
// uniform distribution is a mean preserving spread of nu, which reduces to
//
//     H(y) = int_0^y F(x) dx - y^2/2 <= 0   for all y in [0,1],
//
// F the cdf of nu. Large products of any non-degenerate nu are infeasible.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "bft/distribution.hpp"

namespace bft {

/// Right-continuous cdf of a scalar distribution: F(y) = cumulative[k] on
/// [breakpoints[k], breakpoints[k+1]), and 0 below the first breakpoint.
struct CdfStep {
    std::vector<Rational> breakpoints;
    std::vector<Rational> cumulative;

    explicit CdfStep(const ScalarDistribution& nu);

    [[nodiscard]] Rational operator()(const Rational& y) const;
    /// int_0^y F(x) dx.
    [[nodiscard]] Rational integral(const Rational& y) const;
};

/// H(y) = int_0^y F - y^2/2.
Rational spread_gap(const CdfStep& cdf, const Rational& y);

struct MpsReport {
    bool satisfied = false;
    Rational witness;  ///< first maximizer of H
    Rational height;   ///< H(witness), the maximum of H over [0,1]
};

/// Exact maximum of H: H is concave between breakpoints, so it suffices to look at 0, 1,
/// the atoms, and y = F on each gap where that value falls strictly inside the gap.
/// Checks the spread inequality only; the mean of nu is not compared with 1/2.
MpsReport mps_uniform_check(const ScalarDistribution& nu);

/// Throws Error(NotSymmetric) unless nu is symmetric around 1/2.
bool symmetric_product_feasible(const ScalarDistribution& nu);

struct ProductBound {
    Rational gap;  ///< upper-half mean contribution minus lower-half, split at the median
    mpz_class k;   ///< smallest k with k > 1/(8 gap^2)
    mpz_class n;   ///< 2k agents suffice for infeasibility
};

/// Returns nullopt for a point mass. An atom sitting at the median is split so that each
/// side carries mass exactly 1/2.
std::optional<ProductBound> product_infeasibility_bound(const ScalarDistribution& nu);

/// Signals N(+d,1) in the high state and N(-d,1) in the low one, prior 1/2.
struct GaussianSignal {
    double d = 0.0;
};

double normal_cdf(double x);

/// Bisection on normal_cdf to absolute precision 1e-12. Requires 0 < q < 1.
double normal_quantile(double q);

/// Posterior after signal s: e^{ds} / (e^{ds} + e^{-ds}).
double gaussian_posterior(const GaussianSignal& g, double s);

/// d <= quantile(3/4). Throws Error(InvalidArgument) for d <= 0 or non-finite d.
bool gaussian_product_feasible(const GaussianSignal& g);

}  // namespace bft
