#include <catch_amalgamated.hpp>

#include "forge/extension.hpp"
#include "forge/json_io.hpp"
#include "forge/metric_space.hpp"

using namespace forge;

namespace {

FiniteMetricSpace space_from(std::vector<std::vector<std::int64_t>> d) {
    std::vector<std::string> names;
    std::vector<std::vector<Rational>> rows(d.size(), std::vector<Rational>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
        names.push_back("p" + std::to_string(i));
        for (std::size_t j = 0; j < d.size(); ++j) rows[i][j] = Rational(d[i][j]);
    }
    return FiniteMetricSpace::from_matrix(names, rows);
}

DistanceSpec spec(std::vector<std::pair<PointId, Rational>> t) {
    return DistanceSpec::of(std::move(t));
}

}  // namespace

TEST_CASE("validate_metric accepts the degenerate and equilateral cases") {
    CHECK(validate_metric(space_from({{0}})).ok);
    CHECK(validate_metric(space_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})).ok);
}

TEST_CASE("validate_metric reports the violating triple") {
    auto report = validate_metric(space_from({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
    CHECK_FALSE(report.ok);
    REQUIRE_FALSE(report.violations.empty());
    // d(0,2) = 3 > d(0,1) + d(1,2) = 2
    const auto& v = report.violations.front();
    CHECK(v.lhs == Rational(3));
    CHECK(v.rhs == Rational(2));
}

TEST_CASE("structural faults are distinct from triangle violations") {
    auto m = FiniteMetricSpace::from_matrix(
        {"a", "b"}, {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}});
    auto report = validate_metric(m);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.structural.empty());
    CHECK(report.violations.empty());
    CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a"}, {{Rational(0), Rational(1)}}),
                    Error);
}

TEST_CASE("check_extension_spec covers boundary, violation and vacuous cases") {
    auto m = space_from({{0, 2}, {2, 0}});
    CHECK(check_extension_spec(m, spec({{0, Rational(1)}, {1, Rational(1)}})).ok);

    auto bad = check_extension_spec(m, spec({{0, Rational(1)}, {1, Rational(4)}}));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].kind == SpecViolation::Kind::pair);

    CHECK(check_extension_spec(m, DistanceSpec{}).ok);

    auto zero = check_extension_spec(m, spec({{0, Rational(0)}}));
    CHECK_FALSE(zero.ok);
    CHECK(zero.violations[0].kind == SpecViolation::Kind::non_positive);
    auto neg = check_extension_spec(m, spec({{0, Rational(-1)}}));
    CHECK_FALSE(neg.ok);
}

TEST_CASE("extend_point grows a simplex") {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    extend_point(gs, spec({{0, Rational(1)}}));
    extend_point(gs, spec({{0, Rational(1)}, {1, Rational(1)}}));
    extend_point(gs, spec({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}}));
    REQUIRE(gs.size() == 4);
    for (PointId a = 0; a < 4; ++a)
        for (PointId b = a + 1; b < 4; ++b) CHECK(gs.space().dist(a, b) == Rational(1));
    CHECK(validate_metric(gs.space()).ok);
}

TEST_CASE("extend_point handles a single target and the collinear boundary") {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    PointId b = extend_point(gs, spec({{0, Rational(5, 2)}}));
    CHECK(gs.space().dist(0, b) == Rational(5, 2));

    GrowingSpace two;
    extend_point(two, DistanceSpec{});
    extend_point(two, spec({{0, Rational(2)}}));
    PointId z = extend_point(two, spec({{0, Rational(1)}, {1, Rational(3)}}));
    CHECK(two.space().dist(0, z) == Rational(1));
    CHECK(two.space().dist(1, z) == Rational(3));
    CHECK(validate_metric(two.space()).ok);
}

TEST_CASE("extend_point rejects inconsistent prescriptions with the pair") {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    extend_point(gs, spec({{0, Rational(2)}}));
    try {
        extend_point(gs, spec({{0, Rational(1)}, {1, Rational(4)}}));
        FAIL("expected a violation");
    } catch (const Error& e) {
        CHECK(e.code() == "extend/pair");
        CHECK(e.kind() == Error::Kind::domain);
    }
}

TEST_CASE("unlisted distances take the feasible midpoint, first point defaults to 1") {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    extend_point(gs, spec({{0, Rational(2)}}));
    // Prescribe only the distance to point 1; point 0 is unlisted.
    PointId z = extend_point(gs, spec({{1, Rational(1)}}));
    // Feasible interval for d(z, 0): [|1-2|, 1+2] = [1, 3]; midpoint 2.
    CHECK(gs.space().dist(0, z) == Rational(2));

    GrowingSpace fresh;
    extend_point(fresh, DistanceSpec{});
    PointId w = extend_point(fresh, DistanceSpec{});  // empty targets on non-empty space
    CHECK(fresh.space().dist(0, w) == Rational(1));
}

TEST_CASE("tuples_isometric") {
    auto m = space_from({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
    CHECK(tuples_isometric(m, {0, 1, 2}, {0, 1, 2}));
    CHECK(tuples_isometric(m, {0, 1}, {1, 0}));
    CHECK_FALSE(tuples_isometric(m, {0, 1}, {0, 2}));
    CHECK_THROWS_AS(tuples_isometric(m, {0}, {0, 1}), Error);
}

TEST_CASE("sphere diameter bound and realization") {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    CHECK(sphere_diameter_bound(gs.space(), spec({{0, Rational(2)}})) == Rational(4));

    auto [z1, z2] = realize_sphere_pair(gs, spec({{0, Rational(2)}}));
    CHECK(gs.space().dist(z1, z2) == Rational(4));
    CHECK(gs.space().dist(0, z1) == Rational(2));
    CHECK(gs.space().dist(0, z2) == Rational(2));
    CHECK(validate_metric(gs.space()).ok);

    GrowingSpace two;
    extend_point(two, DistanceSpec{});
    extend_point(two, spec({{0, Rational(2)}}));
    auto s = spec({{0, Rational(1)}, {1, Rational(3)}});
    CHECK(sphere_diameter_bound(two.space(), s) == Rational(2));
    auto [w1, w2] = realize_sphere_pair(two, s);
    CHECK(two.space().dist(w1, w2) == Rational(2));
    CHECK(validate_metric(two.space()).ok);

    GrowingSpace half;
    extend_point(half, DistanceSpec{});
    auto [h1, h2] = realize_sphere_pair(half, spec({{0, Rational(1, 2)}}));
    CHECK(half.space().dist(h1, h2) == Rational(1));

    CHECK_THROWS_AS(sphere_diameter_bound(gs.space(), DistanceSpec{}), Error);
}

TEST_CASE("replay determinism") {
    GrowingSpace gs = generic_space(7, ValueDomain::integers(5), 99);
    GrowingSpace copy = replay(gs.log());
    REQUIRE(copy.size() == gs.size());
    for (PointId a = 0; a < gs.size(); ++a)
        for (PointId b = 0; b < gs.size(); ++b)
            CHECK(copy.space().dist(a, b) == gs.space().dist(a, b));
}

TEST_CASE("generic spaces are valid, seeded and domain-respecting") {
    CHECK(generic_space(1, ValueDomain::integers(5), 1).size() == 1);

    GrowingSpace a = generic_space(8, ValueDomain::integers(5), 5);
    GrowingSpace b = generic_space(8, ValueDomain::integers(5), 5);
    GrowingSpace c = generic_space(8, ValueDomain::integers(5), 6);
    CHECK(validate_metric(a.space()).ok);
    bool same = true, differs = false;
    for (PointId i = 0; i < 8; ++i)
        for (PointId j = i + 1; j < 8; ++j) {
            same = same && a.space().dist(i, j) == b.space().dist(i, j);
            differs = differs || a.space().dist(i, j) != c.space().dist(i, j);
        }
    CHECK(same);
    CHECK(differs);
    for (PointId i = 0; i < 8; ++i)
        for (PointId j = i + 1; j < 8; ++j) {
            CHECK(a.space().dist(i, j) >= Rational(1));
            CHECK(a.space().dist(i, j) <= Rational(5));
            CHECK(a.space().dist(i, j).is_integer());
        }

    GrowingSpace g2 = generic_space(10, ValueDomain::graph(), 11);
    CHECK(validate_metric(g2.space()).ok);
    for (PointId i = 0; i < 10; ++i)
        for (PointId j = i + 1; j < 10; ++j) {
            bool ok = g2.space().dist(i, j) == Rational(1) || g2.space().dist(i, j) == Rational(2);
            CHECK(ok);
        }

    GrowingSpace q = generic_space(8, ValueDomain::rationals(3, 4), 3);
    CHECK(validate_metric(q.space()).ok);
    for (PointId i = 0; i < 8; ++i)
        for (PointId j = i + 1; j < 8; ++j)
            CHECK(4 % q.space().dist(i, j).denominator() == 0);
}

TEST_CASE("uniform two-point sampling hits every integer value") {
    bool seen[6] = {false, false, false, false, false, false};
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        GrowingSpace gs = generic_space(2, ValueDomain::integers(5), seed);
        seen[gs.space().dist(0, 1).numerator()] = true;
    }
    for (int v = 1; v <= 5; ++v) CHECK(seen[v]);
}

TEST_CASE("space and log JSON round-trip") {
    GrowingSpace gs = generic_space(5, ValueDomain::rationals(4, 3), 17);
    json j = growing_to_json(gs);
    GrowingSpace back = growing_from_json(j);
    REQUIRE(back.size() == gs.size());
    for (PointId a = 0; a < gs.size(); ++a)
        for (PointId b = 0; b < gs.size(); ++b)
            CHECK(back.space().dist(a, b) == gs.space().dist(a, b));
    CHECK(growing_to_json(back) == j);

    json plain = space_to_json(gs.space());
    FiniteMetricSpace s = space_from_json(plain);
    CHECK(space_to_json(s) == plain);
}
