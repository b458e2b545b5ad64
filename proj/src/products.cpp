#include "bft/products.hpp"

#include <algorithm>
#include <cmath>

#include "bft/error.hpp"

namespace bft {

CdfStep::CdfStep(const ScalarDistribution& nu) {
    Rational running;
    for (const auto& a : nu.atoms()) {
        running += a.mass;
        breakpoints.push_back(a.value);
        cumulative.push_back(running);
    }
}

Rational CdfStep::operator()(const Rational& y) const {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
    if (it == breakpoints.begin()) return Rational(0);
    return cumulative[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

Rational CdfStep::integral(const Rational& y) const {
    // F jumps by mass_k at breakpoint k, so int_0^y F = sum over breakpoints <= y of mass_k (y - v_k).
    Rational total;
    Rational previous;
    for (std::size_t k = 0; k < breakpoints.size() && breakpoints[k] <= y; ++k) {
        total += (cumulative[k] - previous) * (y - breakpoints[k]);
        previous = cumulative[k];
    }
    return total;
}

Rational spread_gap(const CdfStep& cdf, const Rational& y) {
    return cdf.integral(y) - y * y / Rational(2);
}

MpsReport mps_uniform_check(const ScalarDistribution& nu) {
    const CdfStep cdf(nu);
    std::vector<Rational> candidates{Rational(0), Rational(1)};
    for (std::size_t k = 0; k < cdf.breakpoints.size(); ++k) {
        candidates.push_back(cdf.breakpoints[k]);
        const Rational& f = cdf.cumulative[k];
        const Rational next = k + 1 < cdf.breakpoints.size() ? cdf.breakpoints[k + 1] : Rational(1);
        if (cdf.breakpoints[k] < f && f < next) candidates.push_back(f);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    MpsReport report;
    bool first = true;
    for (const auto& y : candidates) {
        Rational h = spread_gap(cdf, y);
        if (first || h > report.height) {
            report.witness = y;
            report.height = std::move(h);
            first = false;
        }
    }
    report.satisfied = report.height.sign() <= 0;
    return report;
}

bool symmetric_product_feasible(const ScalarDistribution& nu) {
    for (const auto& a : nu.atoms()) {
        if (nu.mass_at(Rational(1) - a.value) != a.mass) {
            throw Error(ErrorCode::NotSymmetric,
                        "distribution is not symmetric around 1/2 (atom at " + a.value.str() + ")");
        }
    }
    return mps_uniform_check(nu).satisfied;
}

std::optional<ProductBound> product_infeasibility_bound(const ScalarDistribution& nu) {
    if (nu.atoms().size() < 2) return std::nullopt;
    const Rational half(1, 2);
    Rational below;  // mass already assigned to the lower side
    Rational gap;
    for (const auto& a : nu.atoms()) {
        const Rational to_lower = std::min(a.mass, std::max(Rational(0), half - below));
        below += to_lower;
        gap += a.value * (a.mass - to_lower) - a.value * to_lower;
    }
    ProductBound bound;
    bound.k = floor(Rational(1) / (Rational(8) * gap * gap)) + 1;
    bound.n = 2 * bound.k;
    bound.gap = std::move(gap);
    return bound;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "quantile level must lie in (0,1)");
    }
    double lo = -40.0;
    double hi = 40.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double gaussian_posterior(const GaussianSignal& g, double s) {
    return 1.0 / (1.0 + std::exp(-2.0 * g.d * s));
}

bool gaussian_product_feasible(const GaussianSignal& g) {
    if (!std::isfinite(g.d) || g.d <= 0.0) {
        throw Error(ErrorCode::InvalidArgument, "separation d must be positive and finite");
    }
    static const double threshold = normal_quantile(0.75);
    return g.d <= threshold;
}

}  // namespace bft
