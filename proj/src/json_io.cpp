#include "bft/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "bft/error.hpp"

namespace bft::io {

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorCode::SchemaError, message); }

const json& field(const json& j, const char* key, std::string_view where) {
    if (!j.is_object()) schema(std::string(where) + " must be an object");
    const auto it = j.find(key);
    if (it == j.end()) schema(std::string(where) + " is missing \"" + key + "\"");
    return *it;
}

std::string decimal(const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", r.to_double());
    return buf;
}

}  // namespace

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

Rational rational_from_json(const json& j, std::string_view where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
        return Rational(j.get<long long>());
    }
    if (j.is_number_float()) {
        // Shortest round-trip decimal, so 0.1 reads as 1/10 rather than its binary value.
        const double d = j.get<double>();
        if (!std::isfinite(d)) schema(std::string(where) + " is not finite");
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, d);
        return Rational::parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const Error& e) {
            schema(std::string(where) + ": " + e.what());
        }
    }
    schema(std::string(where) + " must be a rational string or number");
}

json to_json(const Rational& r) { return r.str(); }

DistributionInput distribution_from_json(const json& j) {
    const json& n = field(j, "n", "distribution");
    if (!n.is_number_integer() || n.get<long long>() < 1) schema("\"n\" must be a positive integer");
    const auto agents = static_cast<std::size_t>(n.get<long long>());

    const json& atoms = field(j, "atoms", "distribution");
    if (!atoms.is_array()) schema("\"atoms\" must be an array");
    std::vector<Atom> parsed;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const std::string where = "atoms[" + std::to_string(k) + "]";
        const json& point = field(atoms[k], "point", where);
        if (!point.is_array()) schema(where + ".point must be an array");
        std::vector<Rational> coords;
        for (std::size_t i = 0; i < point.size(); ++i) {
            coords.push_back(rational_from_json(point[i], where + ".point[" + std::to_string(i) + "]"));
        }
        parsed.push_back({BeliefPoint(std::move(coords)), rational_from_json(field(atoms[k], "mass", where), where + ".mass")});
    }

    DistributionInput input{JointBeliefDistribution(agents, std::move(parsed)), std::nullopt};
    if (const auto it = j.find("prior"); it != j.end() && !it->is_null()) {
        input.prior = rational_from_json(*it, "prior");
    }
    return input;
}

json to_json(const JointBeliefDistribution& dist) {
    json atoms = json::array();
    for (const auto& a : dist.atoms()) {
        json point = json::array();
        for (std::size_t i = 0; i < a.point.size(); ++i) point.push_back(to_json(a.point[i]));
        atoms.push_back({{"mass", to_json(a.mass)}, {"point", std::move(point)}});
    }
    return {{"atoms", std::move(atoms)}, {"n", dist.agents()}};
}

ScalarDistribution scalar_from_json(const json& j) {
    if (j.is_object() && j.contains("n")) {
        const auto input = distribution_from_json(j);
        if (input.dist.agents() != 1) schema("expected a one-agent distribution");
        return marginal(input.dist, 0);
    }
    const json& atoms = field(j, "atoms", "scalar distribution");
    if (!atoms.is_array()) schema("\"atoms\" must be an array");
    std::vector<ValueMass> parsed;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const std::string where = "atoms[" + std::to_string(k) + "]";
        parsed.push_back({rational_from_json(field(atoms[k], "value", where), where + ".value"),
                          rational_from_json(field(atoms[k], "mass", where), where + ".mass")});
    }
    return ScalarDistribution(std::move(parsed));
}

json to_json(const ScalarDistribution& nu) {
    json atoms = json::array();
    for (const auto& a : nu.atoms()) atoms.push_back({{"mass", to_json(a.mass)}, {"value", to_json(a.value)}});
    return {{"atoms", std::move(atoms)}};
}

TradingScheme scheme_from_json(const json& j) {
    const json& agents = field(j, "agents", "scheme");
    if (!agents.is_array()) schema("\"agents\" must be an array");
    TradingScheme scheme(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string where = "agents[" + std::to_string(i) + "]";
        const json& values = field(agents[i], "values", where);
        if (!values.is_object()) schema(where + ".values must be an object");
        for (const auto& [key, amount] : values.items()) {
            Rational v;
            try {
                v = Rational::parse(key);
            } catch (const Error& e) {
                schema(where + ".values key \"" + key + "\": " + e.what());
            }
            scheme.set(i, v, rational_from_json(amount, where + ".values[" + key + "]"));
        }
    }
    return scheme;
}

json to_json(const TradingScheme& scheme) {
    json agents = json::array();
    for (std::size_t i = 0; i < scheme.agents(); ++i) {
        json values = json::object();
        for (const auto& [v, a] : scheme.values(i)) values[v.str()] = to_json(a);
        agents.push_back({{"values", std::move(values)}});
    }
    return {{"agents", std::move(agents)}};
}

ConditionalPair pair_from_json(const json& j) {
    const Rational prior = rational_from_json(field(j, "prior", "pair"), "prior");
    auto low = distribution_from_json(field(j, "low", "pair")).dist;
    auto high = distribution_from_json(field(j, "high", "pair")).dist;
    return ConditionalPair(prior, std::move(low), std::move(high));
}

json to_json(const ConditionalPair& pair) {
    return {{"high", to_json(pair.high())}, {"low", to_json(pair.low())}, {"prior", to_json(pair.prior())}};
}

void write_csv_header(std::ostream& out, std::size_t agents, bool labelled) {
    for (std::size_t i = 0; i < agents; ++i) out << 'x' << (i + 1) << ',';
    out << "mass";
    if (labelled) out << ",label";
    out << '\n';
}

void write_csv_rows(std::ostream& out, const JointBeliefDistribution& dist, std::string_view label) {
    for (const auto& a : dist.atoms()) {
        for (std::size_t i = 0; i < a.point.size(); ++i) out << decimal(a.point[i]) << ',';
        out << decimal(a.mass);
        if (!label.empty()) out << ',' << label;
        out << '\n';
    }
}

}  // namespace bft::io
