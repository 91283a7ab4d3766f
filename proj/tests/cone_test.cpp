#include "lipfree/cone.hpp"
#include "lipfree/fixtures.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

using namespace lipfree;
using lipfree::fixtures::pair;

namespace {

// min{2, 1/d} on the line fixture.
ConeFunction line_g(const FiniteMetricSpace& space)
{
    ConeFunction g(space);
    for (std::size_t k = 0; k < space.pair_count(); ++k)
        g.at(k) = std::min(Rational(2), Rational(1 / space.distance(space.pair(k))));
    return g;
}

std::vector<Rational> random_signed_vector(testing::Rng& rng, const FiniteMetricSpace& space)
{
    const auto gens = dual_generators(space);
    std::vector<Rational> v(space.pair_count(), Rational(0));
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int i = 0; i < 3; ++i) {
        const auto dense = gens[pick(rng)].dense(space);
        const Rational t = testing::random_rational(rng, 0, 3);
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] += t * dense[k];
    }
    // Half the time perturb one coordinate, which usually leaves the cone.
    if (std::bernoulli_distribution(0.5)(rng)) {
        std::uniform_int_distribution<std::size_t> coord(0, v.size() - 1);
        v[coord(rng)] += testing::random_rational(rng, -3, 3);
    }
    return v;
}

} // namespace

TEST_CASE("cone membership on the line")
{
    const auto space = fixtures::line3();
    REQUIRE(in_cone(space, line_g(space)));
    REQUIRE(in_cone(space, ConeFunction::constant(space, 1)));
    REQUIRE(in_cone(space, ConeFunction(space)));

    ConeFunction bad = ConeFunction::constant(space, 1);
    bad(pair(space, "1", "0")) = 3;
    const auto violation = find_cone_violation(space, bad);
    REQUIRE(violation.has_value());
    REQUIRE(*violation == Triple{*space.index_of("1"), *space.index_of("h"), *space.index_of("0")});
    REQUIRE_FALSE(in_cone(space, bad));
}

TEST_CASE("membership agrees with the direct triple check")
{
    testing::Rng rng(31);
    int members = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto space = testing::random_space(rng);
        const auto g = trial % 2 ? testing::random_cone_member(rng, space) : testing::random_pair_function(rng, space, 0, 4);
        const bool expected = testing::oracle_in_cone(space, g);
        members += expected;
        REQUIRE(in_cone(space, g) == expected);
    }
    REQUIRE(members >= 100);
}

TEST_CASE("associated map satisfies the triangle inequality")
{
    testing::Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const auto space = testing::random_space(rng);
        const auto g = testing::random_cone_member(rng, space);
        const auto h = associated_map(space, g);
        for (std::size_t x = 0; x < space.size(); ++x)
            for (std::size_t u = 0; u < space.size(); ++u)
                for (std::size_t y = 0; y < space.size(); ++y)
                    if (x != y)
                        REQUIRE(h[x][y] <= h[x][u] + h[u][y]);
    }
}

TEST_CASE("closure properties of G")
{
    testing::Rng rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        const auto space = testing::random_space(rng);
        const auto f = testing::random_lip(rng, space);
        REQUIRE(in_cone(space, de_leeuw(space, f)));
        REQUIRE(in_cone(space, -de_leeuw(space, f)));

        const auto g1 = testing::random_cone_member(rng, space);
        const auto g2 = testing::random_cone_member(rng, space);
        REQUIRE(in_cone(space, pointwise_max(g1, g2)));
        REQUIRE(in_cone(space, g1 + g2 * testing::random_rational(rng, 0, 3)));
        REQUIRE(in_cone(space, g1.reflected()));
        REQUIRE(in_cone(space, ConeFunction::constant(space, testing::random_rational(rng, 0, 5))));
    }
}

TEST_CASE("clamp")
{
    const auto space = fixtures::line3();
    SECTION("the line example is the clamp of the constant 2 at level 1")
    {
        REQUIRE(clamp(space, ConeFunction::constant(space, 2), 1) == line_g(space));
    }
    SECTION("level zero gives zero")
    {
        REQUIRE(clamp(space, ConeFunction::constant(space, 2), 0) == ConeFunction(space));
    }
    SECTION("errors")
    {
        REQUIRE_THROWS_AS(clamp(space, ConeFunction::constant(space, 1), -1), ConeError);
        REQUIRE_THROWS_AS(clamp(space, ConeFunction::constant(space, -1), 1), ConeError);
        ConeFunction bad = ConeFunction::constant(space, 1);
        bad(pair(space, "1", "0")) = 3;
        try {
            clamp(space, bad, 1);
            FAIL("clamp accepted a function outside G");
        } catch (const ConeError& e) {
            REQUIRE(e.kind() == ConeError::Kind::NotInCone);
        }
    }
    SECTION("random nonnegative members stay in G")
    {
        testing::Rng rng(34);
        for (int trial = 0; trial < 60; ++trial) {
            const auto s = testing::random_space(rng);
            const auto g = testing::random_nonnegative_cone_member(rng, s);
            const auto c = clamp(s, g, testing::random_rational(rng, 0, 4));
            REQUIRE(in_cone(s, c));
            REQUIRE(c.dominated_by(g));
        }
    }
}

TEST_CASE("distance functions")
{
    testing::Rng rng(35);
    for (int trial = 0; trial < 60; ++trial) {
        const auto space = testing::random_space(rng);
        std::vector<Rational> f(space.size());
        for (auto& v : f)
            v = testing::random_rational(rng, 0, 6);
        Rational lip = 0;
        for (std::size_t x = 0; x < space.size(); ++x)
            for (std::size_t y = 0; y < space.size(); ++y)
                if (x != y)
                    lip = std::max(lip, Rational((f[x] - f[y]) / space.distance(x, y)));
        const Rational a = lip + testing::random_rational(rng, 0, 2);
        const auto first = distance_function(space, f, a, Coordinate::First);
        const auto second = distance_function(space, f, a, Coordinate::Second);
        REQUIRE(in_cone(space, first));
        REQUIRE(in_cone(space, second));
        REQUIRE(second == first.reflected());
        if (lip > 0)
            REQUIRE_THROWS_AS(distance_function(space, f, lip / 2, Coordinate::First), ConeError);
    }
    const auto space = fixtures::line3();
    REQUIRE_THROWS_AS(distance_function(space, {0, -1, 0}, 5, Coordinate::First), ConeError);
}

TEST_CASE("decomposition into transforms")
{
    testing::Rng rng(36);
    for (int trial = 0; trial < 60; ++trial) {
        const auto space = testing::random_space(rng);
        const auto g = testing::random_cone_member(rng, space);
        const auto family = decompose(space, g);
        REQUIRE(family.size() == space.size());
        ConeFunction envelope = de_leeuw(space, family.front());
        for (const auto& f : family) {
            REQUIRE(de_leeuw(space, f).dominated_by(g));
            envelope = pointwise_max(envelope, de_leeuw(space, f));
        }
        REQUIRE(envelope == g);
    }
}

TEST_CASE("recovering f from its transform")
{
    testing::Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        const auto space = testing::random_space(rng);
        const auto f = testing::random_lip(rng, space);
        REQUIRE(phi_recover(space, de_leeuw(space, f)) == f);
    }
    const auto space = fixtures::line3();
    try {
        phi_recover(space, ConeFunction::constant(space, 1));
        FAIL("constant 1 accepted");
    } catch (const ConeError& e) {
        REQUIRE(e.kind() == ConeError::Kind::NotInIntersection);
    }
}

TEST_CASE("interior direction has positive slack")
{
    auto check = [](const FiniteMetricSpace& space) {
        const auto ip = interior_point(space);
        REQUIRE(ip.slack > 0);
        REQUIRE(ip.direction.sup_norm() <= 1);
        for (const auto& gen : dual_generators(space))
            REQUIRE(gen.pair_with(space, ip.direction) >= ip.slack);
    };
    check(fixtures::line3());
    check(fixtures::wedge4());
    check(fixtures::discrete4());
    testing::Rng rng(38);
    for (int trial = 0; trial < 100; ++trial)
        check(testing::random_space(rng));
}

TEST_CASE("support minorant")
{
    testing::Rng rng(39);
    for (int trial = 0; trial < 60; ++trial) {
        const auto space = testing::random_space(rng);
        const auto g = testing::random_nonnegative_cone_member(rng, space);
        std::set<std::size_t> subset{space.base()};
        for (std::size_t x = 0; x < space.size(); ++x)
            if (std::bernoulli_distribution(0.4)(rng))
                subset.insert(x);
        const auto f = support_minorant(space, g, subset);
        for (std::size_t a : subset)
            REQUIRE(f[a] == 0);
        REQUIRE(de_leeuw(space, f).dominated_by(g));
    }
    const auto space = fixtures::line3();
    REQUIRE_THROWS_AS(support_minorant(space, ConeFunction::constant(space, 1), {1}), std::invalid_argument);
    try {
        // Phi f with f(1) = 1 is in G but negative on (0, 1).
        support_minorant(space, de_leeuw(space, LipFunction(space, {0, 0, 1})), {0, 2});
        FAIL("negative g accepted");
    } catch (const ConeError& e) {
        REQUIRE(e.kind() == ConeError::Kind::NegativeOnA);
    }
}

TEST_CASE("dual generators")
{
    REQUIRE(dual_generators(fixtures::discrete4()).size() == 24);
    const auto space = fixtures::line3();
    const auto one = *space.index_of("1");
    const auto h = *space.index_of("h");
    const auto zero = *space.index_of("0");
    const auto v = TripleGenerator{{one, h, zero}}.dense(space);
    std::vector<Rational> expected(space.pair_count(), Rational(0));
    expected[space.index({one, h})] = Rational(1, 2);
    expected[space.index({h, zero})] = Rational(1, 2);
    expected[space.index({one, zero})] = -1;
    REQUIRE(v == expected);
    // Pairing a function with a generator is the cone slack.
    REQUIRE(TripleGenerator{{one, h, zero}}.pair_with(space, line_g(space)) == 1);
}

TEST_CASE("generator membership agrees with the boxed cone minimum")
{
    testing::Rng rng(40);
    int members = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto space = testing::random_space(rng, 3, 5);
        const auto lambda = random_signed_vector(rng, space);
        const auto combo = generator_combination(space, lambda);
        const auto boxed = boxed_cone_minimum(space, lambda);
        REQUIRE(in_cone(space, boxed.argmin));
        REQUIRE(pairing(boxed.argmin, lambda) == boxed.value);
        REQUIRE(combo.member == (boxed.value >= 0));
        if (combo.member) {
            ++members;
            const auto gens = dual_generators(space);
            std::vector<Rational> sum(space.pair_count(), Rational(0));
            for (std::size_t k = 0; k < gens.size(); ++k) {
                REQUIRE(combo.weights[k] >= 0);
                const auto dense = gens[k].dense(space);
                for (std::size_t p = 0; p < sum.size(); ++p)
                    sum[p] += combo.weights[k] * dense[p];
            }
            REQUIRE(sum == lambda);
        } else {
            REQUIRE(combo.separator.has_value());
            REQUIRE(in_cone(space, *combo.separator));
            REQUIRE(pairing(*combo.separator, lambda) < 0);
        }
    }
    REQUIRE(members > 20);
    REQUIRE(members < 100);
}
