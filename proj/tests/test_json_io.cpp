#include <sstream>

#include "support.hpp"

#include "bft/catalog.hpp"
#include "bft/generators.hpp"
#include "bft/json_io.hpp"

using bft::ErrorCode;
using bft::Rational;
using bft::io::json;
using testing::error_of;
using testing::q;

namespace {

bft::JointBeliefDistribution read(std::string_view text) {
    return bft::io::distribution_from_json(bft::io::parse_document(text)).dist;
}

}  // namespace

TEST_CASE("rationals") {
    CHECK(bft::io::rational_from_json(json("3/4")) == q(3, 4));
    CHECK(bft::io::rational_from_json(json("0.75")) == q(3, 4));
    CHECK(bft::io::rational_from_json(json("7.5e-1")) == q(3, 4));
    CHECK(bft::io::rational_from_json(json(2)) == q(2));
    CHECK(bft::io::rational_from_json(json(-2)) == q(-2));
    CHECK(bft::io::rational_from_json(json(0.1)) == q(1, 10));
    CHECK(bft::io::rational_from_json(json(0.375)) == q(3, 8));
    CHECK(bft::io::to_json(q(6, 8)) == json("3/4"));
    CHECK(bft::io::to_json(q(4, 2)) == json("2"));

    CHECK(error_of([] { bft::io::rational_from_json(json("1/0")); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { bft::io::rational_from_json(json("abc")); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { bft::io::rational_from_json(json(true)); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { bft::io::rational_from_json(json::array()); }) == ErrorCode::SchemaError);
}

TEST_CASE("distribution documents") {
    const auto input = bft::io::distribution_from_json(bft::io::parse_document(
        R"({"n": 2, "prior": "1/2", "atoms": [{"point": ["0", 1], "mass": 0.5}, {"point": [1, "0"], "mass": "1/2"}]})"));
    CHECK(input.dist == bft::catalog::perfect_disagreement());
    REQUIRE(input.prior);
    CHECK(*input.prior == q(1, 2));
    CHECK_FALSE(bft::io::distribution_from_json(bft::io::parse_document(R"({"n": 1, "atoms": [{"point": [0.5], "mass": 1}]})")).prior);

    CHECK(bft::io::to_json(bft::catalog::perfect_disagreement()).dump() ==
          R"({"atoms":[{"mass":"1/2","point":["0","1"]},{"mass":"1/2","point":["1","0"]}],"n":2})");

    CHECK(error_of([] { bft::io::parse_document("{\"n\": 2,"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { read(R"({"atoms": []})"); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { read(R"({"n": 0, "atoms": []})"); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { read(R"({"n": 1, "atoms": {}})"); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { read(R"({"n": 1, "atoms": [{"point": 1, "mass": 1}]})"); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { read(R"({"n": 1, "atoms": [{"point": [1]}]})"); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { read(R"({"n": 1, "atoms": [{"point": ["1/0"], "mass": 1}]})"); }) == ErrorCode::SchemaError);
    CHECK(error_of([] { read(R"({"n": 1, "atoms": [{"point": [0.5], "mass": "1/2"}]})"); }) == ErrorCode::MassSumNotOne);
    CHECK(error_of([] { read(R"({"n": 1, "atoms": [{"point": [1.5], "mass": 1}]})"); }) == ErrorCode::CoordinateOutOfRange);
    CHECK(error_of([] { read(R"({"n": 2, "atoms": [{"point": [0.5], "mass": 1}]})"); }) == ErrorCode::LengthMismatch);
    CHECK(error_of([] {
        read(R"({"n": 1, "atoms": [{"point": [0.5], "mass": 2}, {"point": [0.2], "mass": -1}]})");
    }) == ErrorCode::NegativeMass);
}

TEST_CASE("scalar, scheme and pair documents") {
    const auto nu = bft::io::scalar_from_json(
        bft::io::parse_document(R"({"atoms": [{"value": "1/4", "mass": "1/2"}, {"value": "3/4", "mass": "1/2"}]})"));
    CHECK(nu == bft::ScalarDistribution({{q(1, 4), q(1, 2)}, {q(3, 4), q(1, 2)}}));
    CHECK(bft::io::scalar_from_json(bft::io::to_json(nu)) == nu);
    const auto single = bft::io::parse_document(R"({"n": 1, "atoms": [{"point": ["1/4"], "mass": "1/2"}, {"point": ["3/4"], "mass": "1/2"}]})");
    CHECK(bft::io::scalar_from_json(single) == nu);
    CHECK(error_of([] { bft::io::scalar_from_json(bft::io::to_json(bft::catalog::perfect_disagreement())); }) ==
          ErrorCode::SchemaError);

    const auto scheme = bft::io::scheme_from_json(
        bft::io::parse_document(R"({"agents": [{"values": {"1": "1"}}, {"values": {"0": -1}}]})"));
    CHECK(bft::evaluate_scheme(bft::catalog::perfect_disagreement(), scheme) == q(1, 2));
    CHECK(bft::io::scheme_from_json(bft::io::to_json(scheme)) == scheme);
    CHECK(error_of([] { bft::io::scheme_from_json(bft::io::parse_document(R"({"agents": [{"values": {"x": 1}}]})")); }) ==
          ErrorCode::SchemaError);
    CHECK(error_of([] { bft::io::scheme_from_json(bft::io::parse_document(R"({"agents": [{"values": {"0": 2}}]})")); }) ==
          ErrorCode::InvalidScheme);

    const bft::ConditionalPair pair(q(1, 2), bft::JointBeliefDistribution(1, {{{q(1, 4)}, q(3, 4)}, {{q(3, 4)}, q(1, 4)}}),
                                    bft::JointBeliefDistribution(1, {{{q(1, 4)}, q(1, 4)}, {{q(3, 4)}, q(3, 4)}}));
    const auto back = bft::io::pair_from_json(bft::io::to_json(pair));
    CHECK(back.prior() == pair.prior());
    CHECK(back.low() == pair.low());
    CHECK(back.high() == pair.high());
}

TEST_CASE("csv") {
    std::ostringstream out;
    bft::io::write_csv_header(out, 2, true);
    bft::io::write_csv_rows(out, bft::catalog::binary_signal(q(3, 4), q(1, 2)), "P");
    CHECK(out.str() ==
          "x1,x2,mass,label\n"
          "0.25,0.25,0.25,P\n0.25,0.75,0.25,P\n0.75,0.25,0.25,P\n0.75,0.75,0.25,P\n");
    std::ostringstream plain;
    bft::io::write_csv_header(plain, 1, false);
    bft::io::write_csv_rows(plain, bft::JointBeliefDistribution::point_mass({q(1, 3)}));
    CHECK(plain.str() == "x1,mass\n0.33333333333333331,1\n");
}

TEST_CASE("property: documents round-trip exactly and byte-stably") {
    bft::gen::Source src(91);
    for (int k = 0; k < 100; ++k) {
        const auto dist = bft::gen::information_structure(src, static_cast<std::size_t>(src.between(1, 4)), 3,
                                                          src.fraction(1, 9, 10));
        const json doc = bft::io::to_json(dist);
        const auto back = bft::io::distribution_from_json(bft::io::parse_document(doc.dump(2))).dist;
        CHECK(back == dist);
        CHECK(bft::io::to_json(back).dump() == doc.dump());
        const auto scheme = bft::gen::scheme_on(src, dist, 7);
        CHECK(bft::io::scheme_from_json(bft::io::to_json(scheme)) == scheme);
    }
}
