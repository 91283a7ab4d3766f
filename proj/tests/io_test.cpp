#include "lipfree/fixtures.hpp"
#include "lipfree/io.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace lipfree;
using io::ParseError;
using lipfree::fixtures::pair;

namespace {

std::string slurp(const std::string& name)
{
    std::ifstream in(std::string(LIPFREE_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParseError parse_failure(std::string_view text)
{
    try {
        io::parse_space(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("document was accepted");
    return ParseError(ParseError::Kind::SyntaxError, "", "");
}

} // namespace

TEST_CASE("fixture documents parse to the built-in spaces")
{
    REQUIRE(io::parse_space(slurp("line3.json")) == fixtures::line3());
    REQUIRE(io::parse_space(slurp("wedge4.json")) == fixtures::wedge4());
    REQUIRE(io::parse_space(slurp("discrete4.json")) == fixtures::discrete4());
}

TEST_CASE("emit and parse round-trip")
{
    for (const char* name : {"line3.json", "wedge4.json", "discrete4.json"}) {
        const auto space = io::parse_space(slurp(name));
        const std::string canonical = io::emit_space(space);
        REQUIRE(io::parse_space(canonical) == space);
        REQUIRE(io::emit_space(io::parse_space(canonical)) == canonical);
    }
    testing::Rng rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        const auto space = testing::random_space(rng);
        REQUIRE(io::parse_space(io::emit_space(space)) == space);
        const auto mu = testing::random_measure(rng, space);
        REQUIRE(io::parse_measure(space, io::emit_measure(space, mu)) == mu);
    }
}

TEST_CASE("space errors")
{
    SECTION("zero denominator is a syntax error with its location")
    {
        const auto e = parse_failure(slurp("bad_rational.json"));
        REQUIRE(e.kind() == ParseError::Kind::SyntaxError);
        REQUIRE(e.context() == "distances[0][1]");
    }
    SECTION("malformed JSON reports line and column")
    {
        const auto e = parse_failure("{\"points\": [\n  \"0\",\n}");
        REQUIRE(e.kind() == ParseError::Kind::SyntaxError);
        REQUIRE(e.context().find("line 3") != std::string::npos);
    }
    SECTION("metric failures are semantic")
    {
        const auto e = parse_failure(slurp("not_metric.json"));
        REQUIRE(e.kind() == ParseError::Kind::SemanticError);
        REQUIRE(e.context() == to_string(MetricError::Kind::TriangleViolation));
    }
    SECTION("missing fields")
    {
        const auto e = parse_failure(R"({"points": ["0", "1", "2"], "distances": []})");
        REQUIRE(e.context() == "base");
    }
    SECTION("incomplete sparse distances")
    {
        const auto e = parse_failure(
            R"({"points": ["0", "1", "2"], "base": "0", "distances": [{"from": "0", "to": "1", "distance": "1"}]})");
        REQUIRE(e.kind() == ParseError::Kind::SemanticError);
    }
}

TEST_CASE("measure documents")
{
    const auto space = fixtures::wedge4();
    const Measure lambda = io::parse_measure(space, slurp("wedge4_lambda.json"));
    REQUIRE(lambda == Measure::dirac(pair(space, "b", "a"), Rational(1, 2)) + Measure::dirac(pair(space, "0", "c")));

    // Repeated pairs add up.
    const auto twice = io::parse_measure(
        space, R"([{"from": "a", "to": "b", "mass": "1/3"}, {"from": "a", "to": "b", "mass": "2/3"}])");
    REQUIRE(twice == Measure::dirac(pair(space, "a", "b")));

    REQUIRE_THROWS_AS(io::parse_measure(space, R"([{"from": "a", "to": "a", "mass": "1"}])"), ParseError);
    REQUIRE_THROWS_AS(io::parse_measure(space, R"([{"from": "a", "to": "b", "mass": "0"}])"), ParseError);
    REQUIRE_THROWS_AS(io::parse_measure(space, R"([{"from": "a", "to": "z", "mass": "1"}])"), ParseError);
    REQUIRE_THROWS_AS(io::parse_measure(space, R"({"from": "a"})"), ParseError);
}

TEST_CASE("free vector syntax")
{
    const auto space = fixtures::wedge4();
    const auto a = *space.index_of("a");
    const auto b = *space.index_of("b");
    const auto c = *space.index_of("c");

    const FreeVector by_points = io::parse_vector_spec(space, "a=-1,b=1,c=-1");
    const FreeVector by_molecules = io::parse_vector_spec(space, "m(0,a),m(b,c)");
    REQUIRE(by_points == by_molecules);
    REQUIRE(io::parse_vector_document(space, slurp("wedge4_vector.json")) == by_points);

    const FreeVector scaled = io::parse_vector_spec(space, "1/2*m(b,a)");
    REQUIRE(scaled.coefficient(b) == 1);
    REQUIRE(scaled.coefficient(a) == -1);
    REQUIRE(scaled.coefficient(c) == 0);
    // The base coordinate is dropped.
    REQUIRE(io::parse_vector_spec(space, "0=5").is_zero());

    REQUIRE_THROWS_AS(io::parse_vector_spec(space, "q=1"), ParseError);
    REQUIRE_THROWS_AS(io::parse_vector_spec(space, "m(a,a)"), ParseError);
    REQUIRE_THROWS_AS(io::parse_vector_spec(space, "a=1/0"), ParseError);
    REQUIRE_THROWS_AS(io::parse_vector_spec(space, "a=1,,b=2"), ParseError);
    REQUIRE_THROWS_AS(io::parse_vector_spec(space, "x(a,b)"), ParseError);
}
