#include "bft/distribution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace bft {

namespace {

void raise(const ValidationError& err) { throw Error(err.code, err.message); }

bool in_unit_interval(const Rational& x) { return x.sign() >= 0 && x <= Rational(1); }

}  // namespace

std::string BeliefPoint::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i > 0) out += ", ";
        out += coords_[i].str();
    }
    return out + ")";
}

std::optional<ValidationError> validate(std::size_t agents, std::span<const Atom> atoms) {
    if (agents == 0) {
        return ValidationError{ErrorCode::LengthMismatch, 0, "agent count must be at least 1"};
    }
    std::set<BeliefPoint> seen;
    Rational total;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const Atom& atom = atoms[k];
        if (atom.point.size() != agents) {
            std::ostringstream msg;
            msg << "atom " << k << " has " << atom.point.size() << " coordinates, expected "
                << agents;
            return ValidationError{ErrorCode::LengthMismatch, k, msg.str()};
        }
        for (const Rational& c : atom.point) {
            if (!in_unit_interval(c)) {
                return ValidationError{ErrorCode::CoordinateOutOfRange, k,
                                       "atom " + std::to_string(k) + " coordinate " + c.str() +
                                           " outside [0,1]"};
            }
        }
        if (atom.mass.sign() < 0) {
            return ValidationError{ErrorCode::NegativeMass, k,
                                   "atom " + std::to_string(k) + " has negative mass " +
                                       atom.mass.str()};
        }
        if (!seen.insert(atom.point).second) {
            return ValidationError{ErrorCode::DuplicatePoint, k,
                                   "duplicate point " + atom.point.str()};
        }
        total += atom.mass;
    }
    if (total != Rational(1)) {
        return ValidationError{ErrorCode::MassSumNotOne, atoms.size(),
                               "masses sum to " + total.str() + ", expected 1"};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

ScalarDistribution::ScalarDistribution(std::vector<ValueMass> atoms) {
    std::map<Rational, Rational> merged;
    for (auto& a : atoms) {
        if (!in_unit_interval(a.value)) {
            throw Error(ErrorCode::CoordinateOutOfRange, "value " + a.value.str() + " outside [0,1]");
        }
        if (a.mass.sign() < 0) {
            throw Error(ErrorCode::NegativeMass, "negative mass " + a.mass.str());
        }
        merged[a.value] += a.mass;
    }
    Rational total;
    for (auto& [value, mass] : merged) {
        if (mass.is_zero()) continue;
        total += mass;
        atoms_.push_back({value, mass});
    }
    if (total != Rational(1)) {
        throw Error(ErrorCode::MassSumNotOne, "masses sum to " + total.str() + ", expected 1");
    }
}

ScalarDistribution ScalarDistribution::point_mass(const Rational& value) {
    return ScalarDistribution({{value, Rational(1)}});
}

Rational ScalarDistribution::mass_at(const Rational& value) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), value,
                               [](const ValueMass& a, const Rational& v) { return a.value < v; });
    return (it != atoms_.end() && it->value == value) ? it->mass : Rational(0);
}

Rational ScalarDistribution::mean() const {
    Rational m;
    for (const auto& a : atoms_) m += a.value * a.mass;
    return m;
}

std::vector<Rational> ScalarDistribution::support() const {
    std::vector<Rational> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) out.push_back(a.value);
    return out;
}

bool operator==(const ScalarDistribution& a, const ScalarDistribution& b) {
    return std::equal(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end(),
                      [](const ValueMass& x, const ValueMass& y) {
                          return x.value == y.value && x.mass == y.mass;
                      });
}

// ---------------------------------------------------------------------------

JointBeliefDistribution::JointBeliefDistribution(std::size_t agents, std::vector<Atom> atoms)
    : agents_(agents) {
    std::map<BeliefPoint, Rational> merged;
    for (auto& a : atoms) {
        if (a.point.size() != agents) {
            // Report through validate so the message carries the atom index.
            if (auto err = validate(agents, atoms)) raise(*err);
        }
        merged[a.point] += a.mass;
    }
    atoms_.reserve(merged.size());
    for (auto& [point, mass] : merged) {
        if (!mass.is_zero()) atoms_.push_back({point, mass});
    }
    if (auto err = validate(agents_, atoms_)) raise(*err);
}

JointBeliefDistribution JointBeliefDistribution::point_mass(BeliefPoint point) {
    const std::size_t n = point.size();
    return JointBeliefDistribution(n, {{std::move(point), Rational(1)}});
}

JointBeliefDistribution JointBeliefDistribution::product(std::span<const ScalarDistribution> factors) {
    std::vector<Atom> atoms{{BeliefPoint{}, Rational(1)}};
    for (const auto& factor : factors) {
        std::vector<Atom> next;
        next.reserve(atoms.size() * factor.size());
        for (const auto& partial : atoms) {
            for (const auto& vm : factor.atoms()) {
                std::vector<Rational> coords = partial.point.coords();
                coords.push_back(vm.value);
                next.push_back({BeliefPoint(std::move(coords)), partial.mass * vm.mass});
            }
        }
        atoms = std::move(next);
    }
    return JointBeliefDistribution(factors.size(), std::move(atoms));
}

JointBeliefDistribution JointBeliefDistribution::power(const ScalarDistribution& factor,
                                                       std::size_t agents) {
    std::vector<ScalarDistribution> factors(agents, factor);
    return product(factors);
}

Rational JointBeliefDistribution::mass_at(const BeliefPoint& point) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                               [](const Atom& a, const BeliefPoint& p) { return a.point < p; });
    return (it != atoms_.end() && it->point == point) ? it->mass : Rational(0);
}

JointBeliefDistribution JointBeliefDistribution::project(std::span<const std::size_t> agents) const {
    std::vector<Atom> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) {
        std::vector<Rational> coords;
        coords.reserve(agents.size());
        for (std::size_t i : agents) {
            if (i >= agents_) throw Error(ErrorCode::IndexOutOfRange, "agent index out of range");
            coords.push_back(a.point[i]);
        }
        out.push_back({BeliefPoint(std::move(coords)), a.mass});
    }
    return JointBeliefDistribution(agents.size(), std::move(out));
}

bool operator==(const JointBeliefDistribution& a, const JointBeliefDistribution& b) {
    return a.agents_ == b.agents_ &&
           std::equal(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end(),
                      [](const Atom& x, const Atom& y) {
                          return x.point == y.point && x.mass == y.mass;
                      });
}

JointBeliefDistribution mix(std::span<const Rational> weights,
                            std::span<const JointBeliefDistribution> parts) {
    if (weights.size() != parts.size() || parts.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mix: weights and parts differ in length");
    }
    const std::size_t n = parts.front().agents();
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].agents() != n) throw Error(ErrorCode::LengthMismatch, "mix: agent counts differ");
        if (weights[k].is_zero()) continue;
        for (const auto& a : parts[k].atoms()) atoms.push_back({a.point, weights[k] * a.mass});
    }
    return JointBeliefDistribution(n, std::move(atoms));
}

ScalarDistribution marginal(const JointBeliefDistribution& dist, std::size_t agent) {
    if (agent >= dist.agents()) {
        throw Error(ErrorCode::IndexOutOfRange, "agent " + std::to_string(agent) +
                                                    " out of range for " +
                                                    std::to_string(dist.agents()) + " agents");
    }
    std::vector<ValueMass> atoms;
    atoms.reserve(dist.size());
    for (const auto& a : dist.atoms()) atoms.push_back({a.point[agent], a.mass});
    return ScalarDistribution(std::move(atoms));
}

std::vector<Rational> agent_means(const JointBeliefDistribution& dist) {
    std::vector<Rational> means(dist.agents());
    for (const auto& a : dist.atoms()) {
        for (std::size_t i = 0; i < dist.agents(); ++i) means[i] += a.point[i] * a.mass;
    }
    return means;
}

Rational implied_prior(const JointBeliefDistribution& dist) {
    auto means = agent_means(dist);
    const Rational p = means.front();
    for (const auto& m : means) {
        if (m != p) throw MartingaleViolation(std::move(means));
    }
    if (p.is_zero() || p == Rational(1)) {
        throw Error(ErrorCode::DegeneratePrior, "common mean posterior is " + p.str());
    }
    return p;
}

// ---------------------------------------------------------------------------

bool is_bayes_consistent(const Rational& prior, const JointBeliefDistribution& low,
                         const JointBeliefDistribution& high) {
    if (low.agents() != high.agents()) return false;
    const Rational q = Rational(1) - prior;
    for (std::size_t i = 0; i < low.agents(); ++i) {
        std::map<Rational, std::pair<Rational, Rational>> by_value;  // value -> (low, high)
        for (const auto& a : low.atoms()) by_value[a.point[i]].first += a.mass;
        for (const auto& a : high.atoms()) by_value[a.point[i]].second += a.mass;
        for (const auto& [v, masses] : by_value) {
            const Rational blended = q * masses.first + prior * masses.second;
            if (prior * masses.second != v * blended) return false;
        }
    }
    return true;
}

ConditionalPair::ConditionalPair(Rational prior, JointBeliefDistribution low,
                                 JointBeliefDistribution high)
    : prior_(std::move(prior)), low_(std::move(low)), high_(std::move(high)) {
    if (prior_.sign() <= 0 || prior_ >= Rational(1)) {
        throw Error(ErrorCode::PriorOutOfRange, "prior " + prior_.str() + " outside (0,1)");
    }
    if (low_.agents() != high_.agents()) {
        throw Error(ErrorCode::LengthMismatch, "conditional distributions differ in agent count");
    }
    if (!is_bayes_consistent(prior_, low_, high_)) {
        throw Error(ErrorCode::InvalidArgument,
                    "conditional pair is not Bayes-consistent: posteriors differ from coordinates");
    }
}

JointBeliefDistribution ConditionalPair::blend() const {
    const std::vector<Rational> weights{Rational(1) - prior_, prior_};
    const std::vector<JointBeliefDistribution> parts{low_, high_};
    return mix(weights, parts);
}

}  // namespace bft
