#include <catch_amalgamated.hpp>

#include "forge/isometry.hpp"
#include "forge/oracle.hpp"

using namespace forge;

namespace {

DistanceSpec spec(std::vector<std::pair<PointId, Rational>> t) {
    return DistanceSpec::of(std::move(t));
}

GrowingSpace two_points(const Rational& d) {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    extend_point(gs, spec({{0, d}}));
    return gs;
}

}  // namespace

TEST_CASE("partial isometries validate their invariants") {
    GrowingSpace gs = two_points(Rational(2));
    PointId u = extend_point(gs, spec({{0, Rational(1)}, {1, Rational(1)}}));

    auto f = PartialIsometry::create(gs.space(), {{0, 1}}, Rational(2));
    CHECK(f.in_domain(0));
    CHECK(f.in_range(1));
    CHECK(f.max_displacement(gs.space()) == Rational(2));
    CHECK(f.preserves_distances(gs.space()));

    CHECK_THROWS_AS(PartialIsometry::create(gs.space(), {{0, 1}}, Rational(1)), Error);
    CHECK_THROWS_AS(PartialIsometry::create(gs.space(), {{0, 1}, {0, u}}, std::nullopt), Error);
    CHECK_THROWS_AS(PartialIsometry::create(gs.space(), {{0, u}, {1, u}}, std::nullopt), Error);
    // Distance preservation: d(0,1)=2 but d(1,u)=1.
    CHECK_THROWS_AS(PartialIsometry::create(gs.space(), {{0, 1}, {1, u}}, std::nullopt), Error);
}

TEST_CASE("extend_bounded: identity map extension keeps the prescribed profile") {
    GrowingSpace gs = two_points(Rational(2));
    PointId u = extend_point(gs, spec({{0, Rational(1)}, {1, Rational(1)}}));
    auto f = PartialIsometry::create(gs.space(), {{0, 0}}, Rational(3));
    auto ext = extend_bounded(gs, f, u);
    CHECK(gs.space().dist(0, ext.image) == Rational(1));
    CHECK(gs.space().dist(u, ext.image) <= Rational(3));
    CHECK(ext.map.preserves_distances(gs.space()));
    CHECK(validate_metric(gs.space()).ok);
}

TEST_CASE("extend_bounded midpoint pick on the two-point example") {
    GrowingSpace gs = two_points(Rational(2));
    PointId u = extend_point(gs, spec({{0, Rational(1)}, {1, Rational(1)}}));
    auto f = PartialIsometry::create(gs.space(), {{0, 1}}, Rational(2));
    auto ext = extend_bounded(gs, f, u);
    // Feasible displacement interval [0, 2]; midpoint picks 1.
    CHECK(gs.space().dist(u, ext.image) == Rational(1));
    CHECK(gs.space().dist(1, ext.image) == Rational(1));
    CHECK(validate_metric(gs.space()).ok);
}

TEST_CASE("extend_bounded refuses a point already in the domain") {
    GrowingSpace gs = two_points(Rational(2));
    auto f = PartialIsometry::create(gs.space(), {{0, 1}}, Rational(2));
    CHECK_THROWS_AS(extend_bounded(gs, f, 0), Error);
}

TEST_CASE("alternating back-and-forth keeps the bound") {
    GrowingSpace gs = generic_space(4, ValueDomain::integers(3), 13);
    Rational k(3);
    PartialIsometry f = PartialIsometry::create(gs.space(), {{0, 1}}, k);
    for (int round = 0; round < 6; ++round) {
        for (PointId p = 0; p < gs.size(); ++p)
            if (!f.in_domain(p)) {
                f = extend_bounded(gs, f, p).map;
                break;
            }
        for (PointId p = 0; p < gs.size(); ++p)
            if (!f.in_range(p)) {
                f = extend_bounded(gs, f.inverse(), p).map.inverse();
                break;
            }
        CHECK(f.max_displacement(gs.space()) <= k);
        CHECK(f.preserves_distances(gs.space()));
    }
    CHECK(validate_metric(gs.space()).ok);
}

TEST_CASE("approximate image point: empty base lands at eps/2") {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    PointId v = approximate_isometry(gs, {}, {}, 0, 0, Rational(1, 2));
    CHECK(gs.space().dist(0, v) == Rational(1, 4));
}

TEST_CASE("approximate image point: single base point") {
    GrowingSpace gs = two_points(Rational(1));  // base 0, vn 1
    PointId image = extend_point(gs, spec({{0, Rational(3)}}));
    PointId anchor = extend_point(gs, spec({{image, Rational(5, 4)}}));
    // Hypothesis: |d(image, anchor) - d(0, 1)| = 1/4 < 1/2.
    PointId v = approximate_isometry(gs, {0}, {image}, 1, anchor, Rational(1, 2));
    CHECK(gs.space().dist(image, v) == Rational(1));
    CHECK(gs.space().dist(v, anchor) < Rational(1, 2));
    CHECK(validate_metric(gs.space()).ok);
}

TEST_CASE("approximate image point: hypothesis violation is named") {
    GrowingSpace gs = two_points(Rational(1));
    PointId image = extend_point(gs, spec({{0, Rational(3)}}));
    PointId anchor = extend_point(gs, spec({{image, Rational(3)}}));
    try {
        approximate_isometry(gs, {0}, {image}, 1, anchor, Rational(1, 2));
        FAIL("expected hypothesis violation");
    } catch (const Error& e) {
        CHECK(e.code() == "approx/hypothesis");
    }
}

TEST_CASE("build_unbounded emits escalating certificates") {
    GrowingSpace gs;
    auto one = build_unbounded(gs, 1);
    CHECK(one.certificates.empty());
    CHECK(one.map.preserves_distances(gs.space()));

    GrowingSpace gs2;
    auto r = build_unbounded(gs2, 10);  // gadgets at stages 2, 6, 10
    REQUIRE(r.certificates.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(r.certificates[i].displacement >= Rational(static_cast<std::int64_t>(i + 1)));
        // The certificate names a mapped point moved by exactly that much.
        auto im = r.map.image(r.certificates[i].point);
        REQUIRE(im.has_value());
        CHECK(gs2.space().dist(r.certificates[i].point, *im) ==
              r.certificates[i].displacement);
    }
    CHECK(r.map.preserves_distances(gs2.space()));
    CHECK(validate_metric(gs2.space()).ok);
}

TEST_CASE("free words parse, reduce and print") {
    FreeWord w = FreeWord::parse("abAB");
    CHECK(w.str() == "abAB");
    CHECK(w.is_reduced());
    CHECK(w.is_cyclically_reduced());
    CHECK_FALSE(FreeWord::parse("aA").is_reduced());
    CHECK(FreeWord::parse("abA").is_reduced());
    CHECK_FALSE(FreeWord::parse("abA").is_cyclically_reduced());
    CHECK_THROWS_AS(FreeWord::parse("a-b"), Error);
}

TEST_CASE("build_free_pair: single-letter word gets escalating witnesses") {
    GrowingSpace gs;
    auto r = build_free_pair(gs, {FreeWord::parse("a")}, 3);
    REQUIRE(r.certificates.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(r.certificates[i].revisit == i + 1);
        CHECK(r.certificates[i].displacement >= Rational(static_cast<std::int64_t>(i + 1)));
        CHECK(r.certificates[i].end > r.certificates[i].base);
    }
    CHECK(r.a.preserves_distances(gs.space()));
    CHECK(validate_metric(gs.space()).ok);
}

TEST_CASE("build_free_pair: commutator moves its base point") {
    GrowingSpace gs;
    auto r = build_free_pair(gs, {FreeWord::parse("abAB")}, 1);
    REQUIRE(r.certificates.size() == 1);
    CHECK(r.certificates[0].displacement.is_positive());
    CHECK(r.certificates[0].end > r.certificates[0].base);
    CHECK(r.a.preserves_distances(gs.space()));
    CHECK(r.b.preserves_distances(gs.space()));

    // The evaluation trail is recorded in the maps: applying the letters of
    // abAB right to left from the base reaches the end point.
    PointId x = r.certificates[0].base;
    auto step = r.b.preimage(x);          // B = b^-1
    REQUIRE(step.has_value());
    auto step2 = r.a.preimage(*step);     // A
    REQUIRE(step2.has_value());
    auto step3 = r.b.image(*step2);       // b
    REQUIRE(step3.has_value());
    auto step4 = r.a.image(*step3);       // a
    REQUIRE(step4.has_value());
    CHECK(*step4 == r.certificates[0].end);
}

TEST_CASE("build_free_pair rejects bad words") {
    GrowingSpace gs;
    CHECK_THROWS_AS(build_free_pair(gs, {FreeWord{}}, 1), Error);
    CHECK_THROWS_AS(build_free_pair(gs, {FreeWord::parse("abA")}, 1), Error);
    CHECK_THROWS_AS(build_free_pair(gs, {FreeWord::parse("c")}, 1), Error);
}

TEST_CASE("compose_dense_free maps tuples exactly and certifies freeness") {
    GrowingSpace gs = generic_space(6, ValueDomain::integers(4), 21);
    // Build an isometric copy of (0, 1) explicitly.
    PointId b0 = extend_point(gs, spec({{2, Rational(2)}}));
    PointId b1 = extend_point(
        gs, spec({{b0, gs.space().dist(0, 1)}}));
    TuplePair tp{{0, 1}, {b0, b1}};
    REQUIRE(tuples_isometric(gs.space(), tp.alpha, tp.beta));

    auto r = compose_dense_free(gs, {tp}, 3);
    REQUIRE(r.homogeneity.size() == 1);
    CHECK(r.homogeneity[0].exact);
    CHECK(r.homogeneity[0].image_of_alpha == std::vector<PointId>{b0, b1});
    REQUIRE(r.freeness.size() == 3);
    for (const auto& c : r.freeness) {
        CHECK(c.exceeds);
        CHECK(c.displacement > c.corrector_sum);
    }
    CHECK(validate_metric(gs.space()).ok);
}

TEST_CASE("compose_dense_free: identical tuples still work") {
    GrowingSpace gs = two_points(Rational(3));
    auto r = compose_dense_free(gs, {TuplePair{{0, 1}, {0, 1}}}, 1);
    CHECK(r.homogeneity[0].exact);
    CHECK(r.homogeneity[0].image_of_alpha == std::vector<PointId>{0, 1});
}

TEST_CASE("compose_dense_free rejects non-isometric pairs") {
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    extend_point(gs, spec({{0, Rational(1)}}));
    extend_point(gs, spec({{0, Rational(2)}, {1, Rational(2)}}));
    CHECK_THROWS_AS(compose_dense_free(gs, {TuplePair{{0, 1}, {0, 2}}}, 1), Error);
}
