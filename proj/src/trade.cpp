#include "bft/trade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <type_traits>

#include "bft/error.hpp"

namespace bft {

TradingScheme::TradingScheme(std::vector<std::map<Rational, Rational>> amounts)
    : amounts_(std::move(amounts)) {
    for (std::size_t i = 0; i < amounts_.size(); ++i) {
        for (const auto& [value, amount] : amounts_[i]) {
            if (abs(amount) > Rational(1)) {
                throw Error(ErrorCode::InvalidScheme, "agent " + std::to_string(i) + " trades " +
                                                          amount.str() + " at " + value.str() +
                                                          ", outside [-1,1]");
            }
        }
    }
}

Rational TradingScheme::amount(std::size_t agent, const Rational& value) const {
    if (agent >= amounts_.size()) return Rational(0);
    const auto& m = amounts_[agent];
    auto it = m.find(value);
    return it == m.end() ? Rational(0) : it->second;
}

void TradingScheme::set(std::size_t agent, const Rational& value, const Rational& amount) {
    if (abs(amount) > Rational(1)) {
        throw Error(ErrorCode::InvalidScheme, "trade amount " + amount.str() + " outside [-1,1]");
    }
    if (agent >= amounts_.size()) amounts_.resize(agent + 1);
    if (amount.is_zero()) {
        amounts_[agent].erase(value);
    } else {
        amounts_[agent][value] = amount;
    }
}

TradingScheme TradingScheme::scaled(const Rational& t) const {
    if (t.sign() < 0 || t > Rational(1)) {
        throw Error(ErrorCode::InvalidArgument, "scale factor " + t.str() + " outside [0,1]");
    }
    TradingScheme out(amounts_.size());
    for (std::size_t i = 0; i < amounts_.size(); ++i) {
        for (const auto& [value, amount] : amounts_[i]) out.set(i, value, amount * t);
    }
    return out;
}

Rational evaluate_scheme(const JointBeliefDistribution& dist, const TradingScheme& scheme) {
    if (scheme.agents() > dist.agents()) {
        throw Error(ErrorCode::WrongArity, "scheme has " + std::to_string(scheme.agents()) +
                                               " agents, distribution has " +
                                               std::to_string(dist.agents()));
    }
    Rational total;
    for (const auto& atom : dist.atoms()) {
        Rational transfer;
        Rational units;
        for (std::size_t i = 0; i < scheme.agents(); ++i) {
            const Rational a = scheme.amount(i, atom.point[i]);
            if (a.is_zero()) continue;
            transfer += a * atom.point[i];
            units += a;
        }
        if (units.sign() > 0) transfer -= units;
        total += atom.mass * transfer;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Exhaustive search. Masses and value-weighted marginal masses are brought to a
// common denominator so the inner loop runs on integers.

namespace {

using Option = std::vector<signed char>;

struct SearchSpace {
    std::vector<std::vector<Rational>> support;        // per agent, ascending
    std::vector<std::vector<Option>> options;          // per agent, lexicographic
    std::vector<std::vector<std::size_t>> atom_index;  // per atom, per agent value index
    std::vector<mpz_class> atom_mass;                  // scaled by `scale`
    std::vector<std::vector<mpz_class>> value_mass;    // v * P_i(v), scaled
    mpz_class scale;
};

std::vector<Option> ternary_options(std::size_t m) {
    std::vector<Option> out;
    Option digits(m, -1);
    for (;;) {
        out.push_back(digits);
        std::size_t pos = m;
        while (pos > 0) {
            --pos;
            if (digits[pos] < 1) {
                ++digits[pos];
                break;
            }
            digits[pos] = -1;
            if (pos == 0) return out;
        }
        if (m == 0) return out;
    }
}

std::vector<Option> signed_subset_options(std::size_t m) {
    std::set<Option> unique;
    for (signed char sign : {static_cast<signed char>(-1), static_cast<signed char>(1)}) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            Option o(m, 0);
            for (std::size_t v = 0; v < m; ++v) {
                if (mask >> v & 1U) o[v] = sign;
            }
            unique.insert(std::move(o));
        }
    }
    return {unique.begin(), unique.end()};
}

template <class MakeOptions>
SearchSpace build_space(const JointBeliefDistribution& dist, std::uint64_t limit,
                        MakeOptions make_options, double (*log_count)(std::size_t)) {
    SearchSpace space;
    const std::size_t n = dist.agents();
    double log_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        space.support.push_back(marginal(dist, i).support());
        log_total += log_count(space.support.back().size());
    }
    if (log_total > std::log2(static_cast<double>(limit)) + 1e-9) {
        throw Error(ErrorCode::SearchSpaceTooLarge,
                    "indicator search space exceeds " + std::to_string(limit) + " schemes");
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        space.options.push_back(make_options(space.support[i].size()));
        total *= space.options.back().size();
    }
    if (total > limit) {
        throw Error(ErrorCode::SearchSpaceTooLarge,
                    "indicator search space has " + std::to_string(total) + " schemes, limit " +
                        std::to_string(limit));
    }

    std::vector<std::vector<Rational>> vm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ScalarDistribution m = marginal(dist, i);
        for (const auto& a : m.atoms()) vm[i].push_back(a.value * a.mass);
    }
    space.scale = 1;
    for (const auto& atom : dist.atoms()) {
        mpz_lcm(space.scale.get_mpz_t(), space.scale.get_mpz_t(), atom.mass.raw().get_den_mpz_t());
    }
    for (const auto& row : vm) {
        for (const auto& x : row) {
            mpz_lcm(space.scale.get_mpz_t(), space.scale.get_mpz_t(), x.raw().get_den_mpz_t());
        }
    }
    for (const auto& atom : dist.atoms()) {
        space.atom_mass.push_back(atom.mass.raw().get_num() * (space.scale / atom.mass.raw().get_den()));
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& s = space.support[i];
            idx[i] = static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), atom.point[i]) - s.begin());
        }
        space.atom_index.push_back(std::move(idx));
    }
    space.value_mass.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& x : vm[i]) {
            space.value_mass[i].push_back(x.raw().get_num() * (space.scale / x.raw().get_den()));
        }
    }
    return space;
}

template <class Int>
Int convert(const mpz_class& x) {
    if constexpr (std::is_same_v<Int, mpz_class>) {
        return x;
    } else {
        return static_cast<Int>(x.get_si());
    }
}

template <class Int>
std::pair<std::vector<std::size_t>, Int> run_search(const SearchSpace& space) {
    const std::size_t n = space.options.size();
    std::vector<std::vector<Int>> linear(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& opt : space.options[i]) {
            Int sum = 0;
            for (std::size_t v = 0; v < opt.size(); ++v) {
                if (opt[v] > 0) sum += convert<Int>(space.value_mass[i][v]);
                if (opt[v] < 0) sum -= convert<Int>(space.value_mass[i][v]);
            }
            linear[i].push_back(sum);
        }
    }
    std::vector<Int> mass;
    for (const auto& m : space.atom_mass) mass.push_back(convert<Int>(m));

    std::vector<std::size_t> choice(n, 0);
    std::vector<std::size_t> best_choice = choice;
    Int best = 0;
    bool have_best = false;
    for (;;) {
        Int value = 0;
        for (std::size_t i = 0; i < n; ++i) value += linear[i][choice[i]];
        for (std::size_t x = 0; x < mass.size(); ++x) {
            int units = 0;
            for (std::size_t i = 0; i < n; ++i) units += space.options[i][choice[i]][space.atom_index[x][i]];
            if (units > 0) value -= mass[x] * units;
        }
        if (!have_best || value > best) {
            best = value;
            best_choice = choice;
            have_best = true;
        }
        std::size_t pos = n;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++choice[pos] < space.options[pos].size()) {
                done = false;
                break;
            }
            choice[pos] = 0;
        }
        if (done) break;
    }
    return {best_choice, best};
}

__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

bool fits_small(const SearchSpace& space) {
    // Every partial sum stays below 2^100 in absolute value when each term is below 2^60
    // and there are fewer than 2^40 of them.
    const auto small = [](const mpz_class& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) < 60; };
    for (const auto& m : space.atom_mass) {
        if (!small(m)) return false;
    }
    for (const auto& row : space.value_mass) {
        for (const auto& x : row) {
            if (!small(x)) return false;
        }
    }
    return true;
}

SchemeSearchResult search(const JointBeliefDistribution& dist, const SearchSpace& space) {
    std::vector<std::size_t> choice;
    Rational profit;
    if (fits_small(space)) {
        auto [c, v] = run_search<Int128>(space);
        choice = std::move(c);
        // Split the 128-bit result into two 64-bit halves for GMP.
        const bool negative = v < 0;
        UInt128 mag = negative ? static_cast<UInt128>(-v) : static_cast<UInt128>(v);
        mpz_class hi(static_cast<unsigned long>(mag >> 64));
        mpz_class lo(static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL));
        mpz_class big = (hi << 64) + lo;
        if (negative) big = -big;
        profit = Rational(mpq_class(big, space.scale));
    } else {
        auto [c, v] = run_search<mpz_class>(space);
        choice = std::move(c);
        profit = Rational(mpq_class(v, space.scale));
    }

    SchemeSearchResult result;
    result.best = TradingScheme(dist.agents());
    result.examined = 1;
    for (std::size_t i = 0; i < dist.agents(); ++i) {
        result.examined *= space.options[i].size();
        const Option& opt = space.options[i][choice[i]];
        for (std::size_t v = 0; v < opt.size(); ++v) {
            if (opt[v] != 0) result.best.set(i, space.support[i][v], Rational(static_cast<long>(opt[v])));
        }
    }
    result.profit = profit;
    return result;
}

}  // namespace

SchemeSearchResult search_indicator_schemes(const JointBeliefDistribution& dist, std::uint64_t limit) {
    const auto space = build_space(dist, limit, ternary_options,
                                   [](std::size_t m) { return static_cast<double>(m) * std::log2(3.0); });
    return search(dist, space);
}

SchemeSearchResult search_signed_indicator_schemes(const JointBeliefDistribution& dist,
                                                   std::uint64_t limit) {
    const auto space = build_space(dist, limit, signed_subset_options,
                                   [](std::size_t m) { return static_cast<double>(m) + 1.0; });
    return search(dist, space);
}

// ---------------------------------------------------------------------------

CubeTrade uniform_cube_demo(std::size_t agents, const Rational& lo, const Rational& hi) {
    if (agents == 0) throw Error(ErrorCode::InvalidThresholds, "need at least one agent");
    if (!(lo.sign() > 0 && lo < hi && hi < Rational(1))) {
        throw Error(ErrorCode::InvalidThresholds,
                    "thresholds must satisfy 0 < lo < hi < 1, got lo=" + lo.str() + " hi=" + hi.str());
    }
    const Rational one(1);
    const Rational half(1, 2);
    // Per agent: buy on [hi,1] at price x, sell on [0,lo].
    const Rational per_agent = half * (one - hi * hi) - half * lo * lo;

    CubeTrade out;
    out.transfer = Rational(static_cast<unsigned long>(agents)) * per_agent;

    // Cells are classified by how many agents sell (s), stay out (z) and buy (b);
    // summing multinomial weights is the same as visiting all 3^n cells.
    const Rational p_sell = lo;
    const Rational p_none = hi - lo;
    const Rational p_buy = one - hi;
    for (std::size_t s = 0; s <= agents; ++s) {
        for (std::size_t b = 0; s + b <= agents; ++b) {
            if (b <= s) continue;
            const std::size_t z = agents - s - b;
            mpz_class ways;
            mpz_class choose_s;
            mpz_bin_uiui(ways.get_mpz_t(), agents, s);
            mpz_bin_uiui(choose_s.get_mpz_t(), agents - s, b);
            ways *= choose_s;
            const Rational weight = Rational(mpq_class(ways)) * pow(p_sell, static_cast<unsigned>(s)) *
                                    pow(p_none, static_cast<unsigned>(z)) *
                                    pow(p_buy, static_cast<unsigned>(b));
            out.shortfall += weight * Rational(static_cast<unsigned long>(b - s));
        }
    }
    out.profit = out.transfer - out.shortfall;
    return out;
}

}  // namespace bft
