#pragma once

// JSON and CSV encodings. Rationals are written as canonical strings ("3/4", "1") and
// read from strings ("3/4", "0.75", "7.5e-1") or JSON numbers. Objects are emitted with
// sorted keys and atoms in lexicographic order, so output is byte-stable.
//
//   distribution  {"n": 2, "prior": "1/2", "atoms": [{"point": ["0", "1"], "mass": "1/2"}, ...]}
//   scalar        {"atoms": [{"value": "1/4", "mass": "1/2"}, ...]}
//   scheme        {"agents": [{"values": {"1": "1"}}, {"values": {"0": "-1"}}]}
//   pair          {"prior": "1/2", "low": <distribution>, "high": <distribution>}

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "bft/distribution.hpp"
#include "bft/trade.hpp"

namespace bft::io {

using nlohmann::json;

/// Throws Error(ParseError) on malformed JSON text.
json parse_document(std::string_view text);

/// Throws Error(SchemaError) when the value is not a rational.
Rational rational_from_json(const json& j, std::string_view where = "value");
json to_json(const Rational& r);

struct DistributionInput {
    JointBeliefDistribution dist;
    std::optional<Rational> prior;
};

/// Structural problems raise Error(SchemaError); invariant violations raise the
/// validation codes (MassSumNotOne, DuplicatePoint is never raised since duplicates merge).
DistributionInput distribution_from_json(const json& j);
json to_json(const JointBeliefDistribution& dist);

/// Accepts the scalar schema or a one-agent distribution.
ScalarDistribution scalar_from_json(const json& j);
json to_json(const ScalarDistribution& nu);

TradingScheme scheme_from_json(const json& j);
json to_json(const TradingScheme& scheme);

ConditionalPair pair_from_json(const json& j);
json to_json(const ConditionalPair& pair);

/// Header x1,...,xn,mass[,label]; values in decimal for plotting tools.
void write_csv_header(std::ostream& out, std::size_t agents, bool labelled);
void write_csv_rows(std::ostream& out, const JointBeliefDistribution& dist, std::string_view label = {});

}  // namespace bft::io
