#include <catch_amalgamated.hpp>

#include "forge/group2.hpp"
#include "forge/json_io.hpp"
#include "forge/oracle.hpp"

using namespace forge;

TEST_CASE("bit names are stable prefixes across levels") {
    CHECK(bit_name(0b01, 2) == "10");
    CHECK(bit_name(0b01, 3) == "100");
    CHECK(bit_name(0b10, 2) == "01");
    CHECK(bit_name(0b11, 2) == "11");
}

TEST_CASE("validate_invariant on the level-1 and level-2 examples") {
    CHECK(validate_invariant(InvariantMetric::level_one(Rational(2))).ok);

    InvariantMetric good{2, {Rational(0), Rational(2), Rational(1), Rational(2)}};
    CHECK(validate_invariant(good).ok);

    InvariantMetric bad{2, {Rational(0), Rational(1), Rational(1), Rational(3)}};
    auto report = validate_invariant(bad);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.violations.empty());
}

TEST_CASE("extend_invariant_metric realizes the worked example") {
    InvariantMetric m = InvariantMetric::level_one(Rational(2));
    InvariantMetric next = extend_invariant_metric(m, {Rational(1), Rational(2)});
    REQUIRE(next.level == 2);
    CHECK(next.delta[1] == Rational(2));  // old generator
    CHECK(next.delta[2] == Rational(1));  // new generator h
    CHECK(next.delta[3] == Rational(2));  // h + g1
    CHECK(validate_invariant(next).ok);
    CHECK(validate_metric(induced_space(next)).ok);
}

TEST_CASE("constant prescriptions are consistent when large enough") {
    InvariantMetric m = InvariantMetric::level_one(Rational(2));
    InvariantMetric next = extend_invariant_metric(m, {Rational(2), Rational(2)});
    CHECK(validate_invariant(next).ok);
}

TEST_CASE("inconsistent prescriptions are rejected with the pair") {
    InvariantMetric m = InvariantMetric::level_one(Rational(2));
    try {
        extend_invariant_metric(m, {Rational(1), Rational(4)});
        FAIL("expected consistency error");
    } catch (const Error& e) {
        CHECK(e.code() == "group2/consistency");
    }
}

TEST_CASE("generic invariant metrics are valid and deterministic") {
    InvariantMetric one = generic_invariant_metric(1, ValueDomain::integers(5), 3);
    CHECK(one.level == 1);
    CHECK(validate_invariant(one).ok);

    InvariantMetric m = generic_invariant_metric(3, ValueDomain::integers(5), 3);
    CHECK(m.order() == 8);
    CHECK(validate_invariant(m).ok);
    InvariantMetric again = generic_invariant_metric(3, ValueDomain::integers(5), 3);
    CHECK(m.delta == again.delta);
}

TEST_CASE("XOR action is by isometries, every element an involution") {
    InvariantMetric m = generic_invariant_metric(3, ValueDomain::integers(5), 9);
    const std::size_t n = m.order();
    for (GroupElement g = 0; g < n; ++g) {
        CHECK((g ^ g) == 0);  // exponent 2
        for (GroupElement x = 0; x < n; ++x)
            for (GroupElement y = 0; y < n; ++y)
                CHECK(m.dist(g ^ x, g ^ y) == m.dist(x, y));
    }
}

TEST_CASE("extension-property statistics are exact fractions") {
    InvariantMetric m = generic_invariant_metric(2, ValueDomain::integers(3), 5);
    ExtensionStats st = extension_property_stats(induced_space(m), ValueDomain::integers(3));
    CHECK(st.checked > 0);
    CHECK(st.realized <= st.checked);
    CHECK(st.fraction() >= Rational(0));
    CHECK(st.fraction() <= Rational(1));
}

TEST_CASE("exponent-3 witness: exact, slack and boundary cases") {
    Exponent3Report exact = exponent3_witness(Rational(6), Rational(0));
    CHECK(exact.side_long_min == Rational(9));
    CHECK(exact.side_short_max == Rational(3));
    CHECK(exact.violation == Rational(3));
    CHECK(exact.contradiction_forced);

    Exponent3Report half = exponent3_witness(Rational(6), Rational(1, 2));
    CHECK(half.violation == Rational(3, 2));
    CHECK(half.contradiction_forced);

    Exponent3Report boundary = exponent3_witness(Rational(6), Rational(1));
    CHECK(boundary.violation == Rational(0));
    CHECK_FALSE(boundary.contradiction_forced);

    CHECK_THROWS_AS(exponent3_witness(Rational(-1), Rational(0)), Error);
}

TEST_CASE("extension acceptance matches full-matrix validation on a sample") {
    OracleReport rep = oracle_invariant_equivalence(3);
    INFO(rep.counterexample);
    CHECK(rep.pass);
    CHECK(rep.cases > 0);
}

TEST_CASE("invariant metric JSON round-trip") {
    InvariantMetric m = generic_invariant_metric(3, ValueDomain::rationals(4, 2), 8);
    json j = invariant_to_json(m);
    InvariantMetric back = invariant_from_json(j);
    CHECK(back.level == m.level);
    CHECK(back.delta == m.delta);
    // Induced space uses bit-string names.
    FiniteMetricSpace s = induced_space(m);
    CHECK(s.name(0) == "000");
    CHECK(s.name(1) == "100");
}
