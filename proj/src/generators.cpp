#include "bft/generators.hpp"

#include <algorithm>
#include <map>

namespace bft::gen {

std::uint64_t Source::below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_);
}

long Source::between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

Rational Source::fraction(long lo, long hi, long den) { return Rational(between(lo, hi), den); }

std::vector<Rational> Source::distinct_values(std::size_t count, long den) {
    std::vector<long> pool(static_cast<std::size_t>(den) + 1);
    for (long k = 0; k <= den; ++k) pool[static_cast<std::size_t>(k)] = k;
    std::shuffle(pool.begin(), pool.end(), rng_);
    pool.resize(std::min(count, pool.size()));
    std::sort(pool.begin(), pool.end());
    std::vector<Rational> out;
    for (long k : pool) out.emplace_back(k, den);
    return out;
}

JointBeliefDistribution information_structure(Source& src, std::size_t agents, std::size_t signals,
                                              const Rational& prior) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < agents; ++i) cells *= signals;

    // Integer weights per signal tuple in each state; keep at least one positive weight.
    std::vector<long> low(cells), high(cells);
    long low_total = 0;
    long high_total = 0;
    while (low_total == 0 || high_total == 0) {
        low_total = high_total = 0;
        for (std::size_t c = 0; c < cells; ++c) {
            low[c] = src.below(3) == 0 ? 0 : src.between(1, 6);
            high[c] = src.below(3) == 0 ? 0 : src.between(1, 6);
            low_total += low[c];
            high_total += high[c];
        }
    }

    const auto signal_of = [&](std::size_t c, std::size_t i) {
        for (std::size_t k = agents - 1; k > i; --k) c /= signals;
        return c % signals;
    };
    const Rational q = Rational(1) - prior;
    std::vector<std::vector<Rational>> posterior(agents, std::vector<Rational>(signals));
    for (std::size_t i = 0; i < agents; ++i) {
        std::vector<Rational> lo(signals), hi(signals);
        for (std::size_t c = 0; c < cells; ++c) {
            lo[signal_of(c, i)] += Rational(low[c], low_total);
            hi[signal_of(c, i)] += Rational(high[c], high_total);
        }
        for (std::size_t s = 0; s < signals; ++s) {
            const Rational total = q * lo[s] + prior * hi[s];
            if (!total.is_zero()) posterior[i][s] = prior * hi[s] / total;
        }
    }

    std::vector<Atom> atoms;
    for (std::size_t c = 0; c < cells; ++c) {
        const Rational mass = q * Rational(low[c], low_total) + prior * Rational(high[c], high_total);
        if (mass.is_zero()) continue;
        std::vector<Rational> coords;
        for (std::size_t i = 0; i < agents; ++i) coords.push_back(posterior[i][signal_of(c, i)]);
        atoms.push_back({BeliefPoint(std::move(coords)), mass});
    }
    return JointBeliefDistribution(agents, std::move(atoms));
}

JointBeliefDistribution equal_means_pair(Source& src, std::size_t m1, std::size_t m2) {
    for (;;) {
        const auto xs = src.distinct_values(m1, 12);
        auto ys = src.distinct_values(m2, 12);
        std::vector<std::vector<long>> w(xs.size(), std::vector<long>(ys.size()));
        long total = 0;
        for (auto& row : w) {
            for (auto& cell : row) {
                cell = src.below(3) == 0 ? 0 : src.between(1, 5);
                total += cell;
            }
        }
        if (total == 0) continue;

        std::vector<Rational> col(ys.size());
        Rational mean1;
        for (std::size_t v = 0; v < xs.size(); ++v) {
            for (std::size_t u = 0; u < ys.size(); ++u) {
                const Rational m(w[v][u], total);
                mean1 += xs[v] * m;
                col[u] += m;
            }
        }
        // Solve for the last column's value so that the agent means agree.
        const std::size_t last = ys.size() - 1;
        if (col[last].is_zero()) continue;
        Rational rest;
        for (std::size_t u = 0; u < last; ++u) rest += ys[u] * col[u];
        ys[last] = (mean1 - rest) / col[last];
        if (ys[last].sign() < 0 || ys[last] > Rational(1)) continue;
        if (mean1.sign() <= 0 || mean1 >= Rational(1)) continue;
        if (std::find(ys.begin(), ys.begin() + static_cast<long>(last), ys[last]) != ys.begin() + static_cast<long>(last)) {
            continue;
        }

        std::vector<Atom> atoms;
        for (std::size_t v = 0; v < xs.size(); ++v) {
            for (std::size_t u = 0; u < ys.size(); ++u) {
                if (w[v][u] > 0) atoms.push_back({{xs[v], ys[u]}, Rational(w[v][u], total)});
            }
        }
        return JointBeliefDistribution(2, std::move(atoms));
    }
}

ScalarDistribution symmetric_scalar(Source& src, std::size_t atoms, long den) {
    // Pairs {v, 1-v} with equal mass, plus possibly an atom at 1/2.
    std::map<Rational, long> weights;
    const std::size_t pairs = atoms / 2;
    for (std::size_t k = 0; k < pairs; ++k) {
        const Rational v = src.fraction(0, (den - 1) / 2, den);
        const long m = src.between(1, 4);
        weights[v] += m;
        weights[Rational(1) - v] += m;
    }
    if (atoms % 2 == 1 || weights.empty()) weights[Rational(1, 2)] += 2 * src.between(1, 4);
    long total = 0;
    for (const auto& [v, m] : weights) total += m;
    std::vector<ValueMass> out;
    for (const auto& [v, m] : weights) out.push_back({v, Rational(m, total)});
    return ScalarDistribution(std::move(out));
}

TradingScheme scheme_on(Source& src, const JointBeliefDistribution& dist, long den) {
    TradingScheme scheme(dist.agents());
    for (std::size_t i = 0; i < dist.agents(); ++i) {
        for (const auto& v : marginal(dist, i).support()) scheme.set(i, v, src.fraction(-den, den, den));
    }
    return scheme;
}

}  // namespace bft::gen
