#include <catch_amalgamated.hpp>

#include "forge/json_io.hpp"
#include "forge/oracle.hpp"
#include "forge/toeplitz.hpp"

using namespace forge;

namespace {

std::vector<Rational> rats(std::vector<std::int64_t> v) {
    std::vector<Rational> out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("fragment validation") {
    CHECK(is_toeplitz(rats({2, 2, 2, 2})).ok);
    CHECK(is_toeplitz(rats({3, 5})).ok);
    auto bad = is_toeplitz(rats({1, 3}));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].i == 1);
    CHECK(bad.violations[0].j == 1);
    CHECK_FALSE(is_toeplitz(rats({0, 1})).ok);
    CHECK(is_toeplitz(std::vector<Rational>{}).ok);
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(rats({3, 5}), rats({3, 3})).ok);
    auto bad = is_admissible(rats({3, 5}), rats({1, 5}));
    CHECK_FALSE(bad.ok);
    CHECK(is_admissible(rats({3, 5}), rats({7})).ok);  // single entry: no pairs
    CHECK(is_admissible(rats({1}), rats({4})).ok);
    CHECK_FALSE(is_admissible(rats({1}), rats({0})).ok);
}

TEST_CASE("amalgamation bounds") {
    auto b = amalgamation_bounds(rats({3, 5}));
    CHECK(b.lower == Rational(2));
    CHECK(b.upper == Rational(8));
    auto c = amalgamation_bounds(rats({7}));
    CHECK(c.lower == Rational(0));
    CHECK(c.upper == Rational(14));
}

TEST_CASE("append interval characterizes fragment membership") {
    // The amalgamation interval is exactly the set of valid next values.
    std::vector<std::int64_t> f = {3, 5, 3};
    auto [lo, hi] = amalgamation_bounds_ints(f);
    for (std::int64_t g = std::max<std::int64_t>(1, lo - 2); g <= hi + 2; ++g) {
        std::vector<std::int64_t> ext = f;
        ext.push_back(g);
        CHECK(is_toeplitz(ext).ok == (lo <= g && g <= hi));
    }
}

TEST_CASE("extend_one solves the four systems") {
    ExtensionStep s = extend_one(std::vector<std::int64_t>{3, 5},
                                 std::vector<std::int64_t>{3, 3},
                                 IntInterval{2, 4});
    CHECK(s.g1 == 3);
    CHECK(s.gN == 3);
    CHECK(s.d == 5);

    ExtensionStep c3 = extend_one(std::vector<std::int64_t>{3},
                                  std::vector<std::int64_t>{3});
    CHECK(c3.g1 == 2);
    CHECK(c3.gN == 2);

    // Appended fragment stays valid, prepended vector stays admissible.
    std::vector<std::int64_t> f2 = {3, 5, s.g1};
    std::vector<std::int64_t> h2 = {s.gN, 3, 3};
    CHECK(is_toeplitz(f2).ok);
    CHECK(is_admissible(f2, h2).ok);
}

TEST_CASE("extend_one infeasibility carries the computed intervals") {
    try {
        extend_one(std::vector<std::int64_t>{3, 5}, std::vector<std::int64_t>{3, 3},
                   IntInterval{5, 5});
        FAIL("expected infeasibility");
    } catch (const Error& e) {
        CHECK(e.code() == "extend-one/infeasible");
        bool saw_g1 = false, saw_gN = false, saw_clamp = false;
        for (const auto& [k, v] : e.context()) {
            saw_g1 = saw_g1 || k == "interval_g1";
            saw_gN = saw_gN || k == "interval_gN";
            saw_clamp = saw_clamp || k == "clamp";
        }
        CHECK(saw_g1);
        CHECK(saw_gN);
        CHECK(saw_clamp);
    }
}

TEST_CASE("scale_to_integer") {
    auto r = scale_to_integer(std::vector<Rational>{Rational(1, 2)},
                              std::vector<Rational>{Rational(1, 2)});
    CHECK(r.factor == 6);
    CHECK(r.f == std::vector<std::int64_t>{3});
    CHECK(r.h == std::vector<std::int64_t>{3});

    auto id = scale_to_integer(rats({3, 5}), rats({3, 3}));
    CHECK(id.factor == 1);

    auto ones = scale_to_integer(rats({1}), rats({1}));
    CHECK(ones.factor == 3);
    CHECK(ones.f == std::vector<std::int64_t>{3});
}

TEST_CASE("prolong: constant fragment goes through the fallback") {
    ProlongResult r = prolong(rats({1}), rats({1}));
    CHECK(r.values == rats({1, 1, 1}));
    CHECK(r.m == 1);
    CHECK(r.used_fallback);
}

TEST_CASE("prolong: block scheme output for (3,5) and (3,3)") {
    ProlongResult r = prolong(rats({3, 5}), rats({3, 3}));
    REQUIRE(r.values.size() == 14);  // 2n + n*d = 4 + 10
    CHECK_FALSE(r.used_fallback);
    CHECK(is_toeplitz(r.values).ok);
    CHECK(r.values[0] == Rational(3));
    CHECK(r.values[1] == Rational(5));
    CHECK(r.values[12] == Rational(3));
    CHECK(r.values[13] == Rational(3));

    // Deterministic.
    ProlongResult again = prolong(rats({3, 5}), rats({3, 3}));
    CHECK(again.values == r.values);
}

TEST_CASE("prolong: rational input scales and descales exactly") {
    ProlongResult r = prolong({Rational(3, 2), Rational(5, 2)},
                              {Rational(3, 2), Rational(3, 2)});
    CHECK(is_toeplitz(r.values).ok);
    CHECK(r.values.front() == Rational(3, 2));
    CHECK(r.values[1] == Rational(5, 2));
    CHECK(r.values.back() == Rational(3, 2));
    CHECK(r.factor == 2);
}

TEST_CASE("prolong rejects bad input") {
    CHECK_THROWS_AS(prolong(rats({1, 3}), rats({1, 1})), Error);   // invalid fragment
    CHECK_THROWS_AS(prolong(rats({3, 5}), rats({1, 5})), Error);   // inadmissible vector
    CHECK_THROWS_AS(prolong(rats({3, 5}), rats({3})), Error);      // length mismatch
}

TEST_CASE("prolong contract on a small exhaustive family") {
    OracleReport rep = oracle_prolong(2, 4);
    INFO(rep.counterexample);
    CHECK(rep.pass);
    CHECK(rep.cases > 0);
}

TEST_CASE("extend_one feasibility agrees with the brute-forced system") {
    OracleReport rep = oracle_extend_one(2, 4);
    INFO(rep.counterexample);
    CHECK(rep.pass);
    CHECK(rep.cases > 0);
}

TEST_CASE("compact prolongation finds short bridges") {
    std::vector<std::int64_t> f = {3, 3, 3};
    std::vector<std::int64_t> h = {3, 3};
    auto r = prolong_compact_ints(f, h);
    REQUIRE(r.has_value());
    CHECK(is_toeplitz(r->full).ok);
    CHECK(r->full.size() == f.size() + r->m + h.size());
    CHECK(r->m <= 2);
}

TEST_CASE("universal fragment realizes every processed vector") {
    UniversalResult r = universal_prefix(0);
    CHECK(r.prefix == rats({1}));
    CHECK(r.table.empty());

    UniversalResult u = universal_prefix(8);
    CHECK(is_toeplitz(u.prefix).ok);
    CHECK(u.table.size() == 8);
    for (const auto& entry : u.table) {
        REQUIRE(entry.offset + entry.vec.size() <= u.prefix.size());
        for (std::size_t i = 0; i < entry.vec.size(); ++i)
            CHECK(u.prefix[entry.offset + i] == Rational(entry.vec[i]));
        std::vector<Rational> h;
        for (auto v : entry.vec) h.emplace_back(v);
        auto match = verify_window_realization(u.prefix, h);
        REQUIRE(match.has_value());
        CHECK(match->offset <= entry.offset);
    }
}

TEST_CASE("vector enumeration is exhaustive and ordered by blocks") {
    VectorEnumeration e;
    using V = std::vector<std::int64_t>;
    CHECK(e.next() == V{1});
    CHECK(e.next() == V{1, 1});
    CHECK(e.next() == V{2});
    CHECK(e.next() == V{1, 2});
    CHECK(e.next() == V{2, 1});
    CHECK(e.next() == V{2, 2});
    CHECK(e.next() == V{1, 1, 1});
    // Every short vector over small entries eventually appears.
    VectorEnumeration scan;
    bool seen_32 = false, seen_313 = false;
    for (int i = 0; i < 200 && !(seen_32 && seen_313); ++i) {
        V v = scan.next();
        seen_32 = seen_32 || v == V{3, 2};
        seen_313 = seen_313 || v == V{3, 1, 3};
    }
    CHECK(seen_32);
    CHECK(seen_313);
}

TEST_CASE("window search handles both orientations and misses") {
    auto m = verify_window_realization(rats({1, 1, 1}), rats({1, 1}));
    REQUIRE(m.has_value());
    CHECK(m->offset == 0);
    CHECK_FALSE(m->reversed);

    auto rev = verify_window_realization(rats({1, 2, 3}), rats({3, 2}));
    REQUIRE(rev.has_value());
    CHECK(rev->offset == 1);
    CHECK(rev->reversed);

    CHECK_FALSE(verify_window_realization(rats({1, 1}), rats({1, 1, 1})).has_value());
    CHECK_FALSE(verify_window_realization(rats({1, 1}), rats({2})).has_value());

    ProlongResult r = prolong(rats({3, 5}), rats({3, 3}));
    auto w = verify_window_realization(r.values, rats({3, 3}));
    REQUIRE(w.has_value());
    CHECK(w->offset <= 12);
}

TEST_CASE("cyclic metric from a fragment") {
    FiniteMetricSpace flat = cyclic_metric(rats({2, 2, 2}), 3);
    REQUIRE(flat.size() == 4);
    for (PointId i = 0; i < 4; ++i)
        for (PointId j = i + 1; j < 4; ++j) CHECK(flat.dist(i, j) == Rational(2));

    ProlongResult r = prolong(rats({3, 5}), rats({3, 3}));
    FiniteMetricSpace m = cyclic_metric(r.values, r.values.size());
    CHECK(m.size() == 15);
    CHECK(validate_metric(m).ok);
    // Unit shift has constant displacement f(1).
    for (PointId i = 0; i + 1 < m.size(); ++i) CHECK(m.dist(i, i + 1) == r.values[0]);
    // And is a partial isometry on {0..size-1}.
    std::vector<PointId> from, to;
    for (PointId i = 0; i + 1 < m.size(); ++i) { from.push_back(i); to.push_back(i + 1); }
    CHECK(tuples_isometric(m, from, to));

    CHECK_THROWS_AS(cyclic_metric(rats({1, 1}), 3), Error);
}

TEST_CASE("triangle inequality of the cyclic metric is the fragment condition") {
    CHECK(validate_metric(cyclic_metric(rats({2, 3, 4}), 3)).ok);
    // Corrupt one value so the pair condition fails; the induced space must
    // show a triangle violation.
    std::vector<Rational> bad = rats({2, 3, 8});
    CHECK_FALSE(is_toeplitz(bad).ok);
    CHECK_FALSE(validate_metric(cyclic_metric(bad, 3)).ok);
}

TEST_CASE("conjugacy invariants compare by first differing index") {
    auto c = conjugacy_compare(rats({1, 1}), rats({1, 2}));
    CHECK(c.distinguishable);
    CHECK(c.first_difference == 2);

    auto same = conjugacy_compare(rats({1, 2, 3}), rats({1, 2, 3}));
    CHECK_FALSE(same.distinguishable);
    CHECK(same.compared_length == 3);

    UniversalResult a = universal_prefix(4, rats({1}));
    UniversalResult b = universal_prefix(4, rats({2}));
    CHECK(conjugacy_compare(a.prefix, b.prefix).distinguishable);
}

TEST_CASE("prefix JSON round-trip") {
    ProlongResult r = prolong(rats({1}), rats({1}));
    json j = prefix_to_json(r.values);
    CHECK(j["mode"] == "int");
    CHECK(prefix_from_json(j) == r.values);

    json q = prefix_to_json({Rational(1, 3), Rational(2, 3)});
    CHECK(q["mode"] == "rat");
    CHECK(prefix_from_json(q) == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
}
