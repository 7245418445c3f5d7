#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "forge/extension.hpp"
#include "forge/group2.hpp"
#include "forge/isometry.hpp"
#include "forge/metric_space.hpp"
#include "forge/orbit_graph.hpp"
#include "forge/toeplitz.hpp"

// Brute-force and exhaustive checks, kept independent of the construction
// paths they certify: completions are found by backtracking over integer
// boxes, never by the midpoint rules the library itself uses.

namespace forge {

struct OracleReport {
    std::string suite;
    bool pass = true;
    std::size_t cases = 0;
    std::vector<std::string> notes;
    std::string counterexample;

    void fail(const std::string& what) {
        if (pass) counterexample = what;
        pass = false;
    }
};

namespace oracle_detail {

using Matrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// All integer metric spaces with exactly `points` points and distances in
// [1, dmax]; rows are assigned point by point with incremental triangle
// pruning, so every emitted matrix is a metric.
template <class Fn>
void for_each_integer_space_of(std::size_t points, std::int64_t dmax, Fn&& fn) {
    Matrix d(points, std::vector<std::int64_t>(points, 0));
    auto rec = [&](auto&& self, std::size_t j, std::size_t i) -> void {
        if (j == points) {
            fn(d);
            return;
        }
        if (i == j) {
            self(self, j + 1, 0);
            return;
        }
        for (std::int64_t v = 1; v <= dmax; ++v) {
            bool ok = true;
            for (std::size_t q = 0; q < i && ok; ++q)
                ok = iabs(d[q][j] - v) <= d[q][i] && d[q][i] <= d[q][j] + v;
            if (!ok) continue;
            d[i][j] = d[j][i] = v;
            self(self, j, i + 1);
        }
        d[i][j] = d[j][i] = 0;
    };
    rec(rec, 1, 0);
}

template <class Fn>
void for_each_integer_space_upto(std::size_t max_points, std::int64_t dmax, Fn&& fn) {
    for (std::size_t n = 1; n <= max_points; ++n) for_each_integer_space_of(n, dmax, fn);
}

inline FiniteMetricSpace to_space(const Matrix& d) {
    std::vector<std::string> names;
    std::vector<std::vector<Rational>> rows(d.size(), std::vector<Rational>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
        names.push_back("p" + std::to_string(i));
        for (std::size_t j = 0; j < d.size(); ++j) rows[i][j] = Rational(d[i][j]);
    }
    return FiniteMetricSpace::from_matrix(std::move(names), std::move(rows));
}

// Does an integer row (a new point's distances, forced where the spec
// prescribes, frees in [1, vmax]) complete the matrix to a metric?
inline bool completion_exists(const Matrix& d,
                              const std::vector<std::optional<std::int64_t>>& forced,
                              std::int64_t vmax) {
    const std::size_t n = d.size();
    std::vector<std::int64_t> row(n, 0);
    auto rec = [&](auto&& self, std::size_t p) -> bool {
        if (p == n) return true;
        std::int64_t lo = 1, hi = vmax;
        for (std::size_t q = 0; q < p; ++q) {
            lo = std::max(lo, iabs(row[q] - d[q][p]));
            hi = std::min(hi, row[q] + d[q][p]);
        }
        if (forced[p]) {
            std::int64_t v = *forced[p];
            if (v < 1 || v < lo || v > hi) return false;
            row[p] = v;
            return self(self, p + 1);
        }
        for (std::int64_t v = lo; v <= hi; ++v) {
            row[p] = v;
            if (self(self, p + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

// Two new points realizing the forced profile with mutual distance d12.
inline bool sphere_pair_exists(const Matrix& d,
                               const std::vector<std::optional<std::int64_t>>& forced,
                               std::int64_t d12, std::int64_t vmax) {
    const std::size_t n = d.size();
    std::vector<std::int64_t> r1(n, 0), r2(n, 0);
    auto rec2 = [&](auto&& self, std::size_t p) -> bool {
        if (p == n) return true;
        std::int64_t lo = 1, hi = vmax + d12;
        for (std::size_t q = 0; q < p; ++q) {
            lo = std::max(lo, iabs(r2[q] - d[q][p]));
            hi = std::min(hi, r2[q] + d[q][p]);
        }
        lo = std::max(lo, iabs(r1[p] - d12));
        hi = std::min(hi, r1[p] + d12);
        if (forced[p]) {
            std::int64_t v = *forced[p];
            if (v < lo || v > hi) return false;
            r2[p] = v;
            return self(self, p + 1);
        }
        for (std::int64_t v = lo; v <= hi; ++v) {
            r2[p] = v;
            if (self(self, p + 1)) return true;
        }
        return false;
    };
    auto rec1 = [&](auto&& self, std::size_t p) -> bool {
        if (p == n) return rec2(rec2, 0);
        std::int64_t lo = 1, hi = vmax;
        for (std::size_t q = 0; q < p; ++q) {
            lo = std::max(lo, iabs(r1[q] - d[q][p]));
            hi = std::min(hi, r1[q] + d[q][p]);
        }
        if (forced[p]) {
            std::int64_t v = *forced[p];
            if (v < lo || v > hi) return false;
            r1[p] = v;
            return self(self, p + 1);
        }
        for (std::int64_t v = lo; v <= hi; ++v) {
            r1[p] = v;
            if (self(self, p + 1)) return true;
        }
        return false;
    };
    return rec1(rec1, 0);
}

// All value assignments g : subset -> [min_value, max_value].
template <class Fn>
void for_each_spec(std::size_t n, std::int64_t min_value, std::int64_t max_value, Fn&& fn) {
    std::vector<std::optional<std::int64_t>> g(n);
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == n) {
            fn(g);
            return;
        }
        g[p] = std::nullopt;
        self(self, p + 1);
        for (std::int64_t v = min_value; v <= max_value; ++v) {
            g[p] = v;
            self(self, p + 1);
        }
        g[p] = std::nullopt;
    };
    rec(rec, 0);
}

inline DistanceSpec to_spec(const std::vector<std::optional<std::int64_t>>& g) {
    std::vector<std::pair<PointId, Rational>> t;
    for (std::size_t p = 0; p < g.size(); ++p)
        if (g[p]) t.emplace_back(p, Rational(*g[p]));
    return DistanceSpec::of(std::move(t));
}

inline std::string describe_case(const Matrix& d,
                                 const std::vector<std::optional<std::int64_t>>& g) {
    std::ostringstream os;
    os << "space[";
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            os << " d(" << i << "," << j << ")=" << d[i][j];
    os << " ] spec[";
    for (std::size_t p = 0; p < g.size(); ++p)
        if (g[p]) os << " g(" << p << ")=" << *g[p];
    os << " ]";
    return os.str();
}

// All distance-preserving injective partial maps of an integer space,
// built pair by pair with pruning.
template <class Fn>
void for_each_partial_isometry(const Matrix& d, Fn&& fn) {
    const std::size_t n = d.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t a) -> void {
        if (a == n) {
            fn(pairs);
            return;
        }
        self(self, a + 1);  // a unmapped
        for (std::size_t b = 0; b < n; ++b) {
            if (used[b]) continue;
            bool ok = true;
            for (const auto& [x, y] : pairs) ok = ok && d[x][a] == d[y][b];
            if (!ok) continue;
            used[b] = true;
            pairs.emplace_back(a, b);
            self(self, a + 1);
            pairs.pop_back();
            used[b] = false;
        }
    };
    rec(rec, 0);
}

}  // namespace oracle_detail

// ------------------------------------------------------------------
// metric suite: extension soundness — a spec is accepted exactly when an
// integer completion exists, and accepted specs extend to valid spaces.
// ------------------------------------------------------------------
inline OracleReport oracle_extension_soundness(std::size_t max_points, std::int64_t max_value) {
    using namespace oracle_detail;
    OracleReport rep;
    rep.suite = "metric/extension-soundness";
    for_each_integer_space_upto(max_points, max_value, [&](const Matrix& d) {
        if (!rep.pass) return;
        FiniteMetricSpace space = to_space(d);
        GrowingSpace base = import_space(space);
        for_each_spec(d.size(), 0, max_value, [&](const auto& g) {
            if (!rep.pass) return;
            ++rep.cases;
            DistanceSpec spec = to_spec(g);
            bool accepted = check_extension_spec(space, spec).ok;
            bool realizable = completion_exists(d, g, 2 * max_value);
            if (accepted != realizable) {
                rep.fail("accepted=" + std::to_string(accepted) +
                         " realizable=" + std::to_string(realizable) + " at " +
                         describe_case(d, g));
                return;
            }
            if (accepted) {
                GrowingSpace gs = base;
                extend_point(gs, spec);
                if (!validate_metric(gs.space()).ok)
                    rep.fail("extension not a metric at " + describe_case(d, g));
            }
        });
    });
    return rep;
}

// ------------------------------------------------------------------
// metric suite: sphere diameter — brute-force max of d(z1,z2) equals twice
// the minimum prescribed value, and realize_sphere_pair attains it.
// ------------------------------------------------------------------
inline OracleReport oracle_sphere_diameter(std::size_t max_points, std::int64_t max_value) {
    using namespace oracle_detail;
    OracleReport rep;
    rep.suite = "metric/sphere-diameter";
    for_each_integer_space_upto(max_points, max_value, [&](const Matrix& d) {
        if (!rep.pass) return;
        FiniteMetricSpace space = to_space(d);
        GrowingSpace base = import_space(space);
        for_each_spec(d.size(), 1, max_value, [&](const auto& g) {
            if (!rep.pass) return;
            bool any = false;
            for (const auto& v : g) any = any || v.has_value();
            if (!any) return;
            DistanceSpec spec = to_spec(g);
            if (!check_extension_spec(space, spec).ok) return;
            ++rep.cases;
            std::int64_t best = 0;
            for (std::int64_t d12 = 1; d12 <= 2 * max_value + 1; ++d12)
                if (sphere_pair_exists(d, g, d12, 2 * max_value)) best = d12;
            Rational bound = sphere_diameter_bound(space, spec);
            if (Rational(best) != bound) {
                rep.fail("brute max " + std::to_string(best) + " != bound " + bound.str() +
                         " at " + describe_case(d, g));
                return;
            }
            GrowingSpace gs = base;
            auto [z1, z2] = realize_sphere_pair(gs, spec);
            if (gs.space().dist(z1, z2) != bound || !validate_metric(gs.space()).ok)
                rep.fail("realize_sphere_pair missed the bound at " + describe_case(d, g));
        });
    });
    return rep;
}

// ------------------------------------------------------------------
// toeplitz suite: amalgamation bounds ordered on every valid fragment
// (fragments found by filtering the whole value box through the validator).
// ------------------------------------------------------------------
inline OracleReport oracle_amalgamation(std::size_t max_n, std::int64_t max_value) {
    OracleReport rep;
    rep.suite = "toeplitz/amalgamation";
    std::vector<std::int64_t> f;
    auto rec = [&](auto&& self) -> void {
        if (!rep.pass) return;
        if (!f.empty()) {
            if (is_toeplitz(f).ok) {
                ++rep.cases;
                auto [lo, hi] = amalgamation_bounds_ints(f);
                if (lo > hi) {
                    std::string s;
                    for (auto v : f) s += std::to_string(v) + ",";
                    rep.fail("M > m at fragment (" + s + ")");
                    return;
                }
            } else {
                return;  // no valid fragment extends an invalid one
            }
        }
        if (f.size() == max_n) return;
        for (std::int64_t v = 1; v <= max_value; ++v) {
            f.push_back(v);
            self(self);
            f.pop_back();
        }
    };
    rec(rec);
    return rep;
}

// ------------------------------------------------------------------
// toeplitz suite: extend_one agrees with brute force over the integer box —
// it succeeds exactly when some pair satisfies the four systems, and its
// output satisfies them.
// ------------------------------------------------------------------
namespace oracle_detail {

inline bool pair_satisfies_systems(std::span<const std::int64_t> f,
                                   std::span<const std::int64_t> h, std::int64_t g1,
                                   std::int64_t gN, std::int64_t d) {
    const std::size_t n = f.size();
    for (std::size_t i = 1; i <= n; ++i) {
        if (iabs(f[i - 1] - f[n - i]) > g1 || g1 > f[i - 1] + f[n - i]) return false;
        if (iabs(f[i - 1] - h[i - 1]) > gN || gN > f[i - 1] + h[i - 1]) return false;
    }
    if (iabs(g1 - gN) > h[n - 1] || h[n - 1] > g1 + gN) return false;
    return 2 <= g1 && g1 <= d - 1 && 2 <= gN && gN <= d - 1;
}

template <class Fn>
void for_each_admissible_vector(std::span<const std::int64_t> f, std::size_t len,
                                std::int64_t max_value, Fn&& fn) {
    std::vector<std::int64_t> h;
    auto rec = [&](auto&& self) -> void {
        if (h.size() == len) {
            fn(h);
            return;
        }
        for (std::int64_t v = 1; v <= max_value; ++v) {
            h.push_back(v);
            if (is_admissible(f, h).ok) self(self);
            h.pop_back();
        }
    };
    rec(rec);
}

template <class Fn>
void for_each_toeplitz_fragment(std::size_t len, std::int64_t max_value, Fn&& fn) {
    std::vector<std::int64_t> f;
    auto rec = [&](auto&& self) -> void {
        if (f.size() == len) {
            fn(f);
            return;
        }
        for (std::int64_t v = 1; v <= max_value; ++v) {
            f.push_back(v);
            if (is_toeplitz(f).ok) self(self);
            f.pop_back();
        }
    };
    rec(rec);
}

}  // namespace oracle_detail

inline OracleReport oracle_extend_one(std::size_t max_n, std::int64_t max_value) {
    using namespace oracle_detail;
    OracleReport rep;
    rep.suite = "toeplitz/extend-one";
    for (std::size_t n = 1; n <= max_n && rep.pass; ++n) {
        for_each_toeplitz_fragment(n, max_value, [&](const std::vector<std::int64_t>& f) {
            if (!rep.pass) return;
            for_each_admissible_vector(f, n, max_value, [&](const std::vector<std::int64_t>& h) {
                if (!rep.pass) return;
                ++rep.cases;
                std::int64_t d = 0;
                for (auto v : f) d = std::max(d, v);
                for (auto v : h) d = std::max(d, v);
                bool brute = false;
                for (std::int64_t g1 = 1; g1 <= d && !brute; ++g1)
                    for (std::int64_t gN = 1; gN <= d && !brute; ++gN)
                        brute = pair_satisfies_systems(f, h, g1, gN, d);
                bool claimed = true;
                ExtensionStep step{};
                try {
                    step = extend_one(f, h);
                } catch (const Error&) {
                    claimed = false;
                }
                auto show = [&]() {
                    std::string s = "f=(";
                    for (auto v : f) s += std::to_string(v) + ",";
                    s += ") h=(";
                    for (auto v : h) s += std::to_string(v) + ",";
                    return s + ")";
                };
                if (claimed != brute) {
                    rep.fail("extend_one claims " + std::to_string(claimed) + ", brute says " +
                             std::to_string(brute) + " at " + show());
                    return;
                }
                if (claimed && !pair_satisfies_systems(f, h, step.g1, step.gN, d))
                    rep.fail("extend_one output violates the systems at " + show());
            });
        });
    }
    return rep;
}

// ------------------------------------------------------------------
// toeplitz suite: prolongation contract — output validates, starts with the
// fragment, ends with the vector; exhaustive over the admissible box.
// ------------------------------------------------------------------
inline OracleReport oracle_prolong(std::size_t max_n, std::int64_t max_value,
                                   const ProlongOptions& opts = {}) {
    using namespace oracle_detail;
    OracleReport rep;
    rep.suite = "toeplitz/prolong";
    std::size_t fallbacks = 0, fallback_small_d = 0;
    for (std::size_t n = 1; n <= max_n && rep.pass; ++n) {
        for_each_toeplitz_fragment(n, max_value, [&](const std::vector<std::int64_t>& f) {
            if (!rep.pass) return;
            for_each_admissible_vector(f, n, max_value, [&](const std::vector<std::int64_t>& h) {
                if (!rep.pass) return;
                ++rep.cases;
                auto show = [&]() {
                    std::string s = "f=(";
                    for (auto v : f) s += std::to_string(v) + ",";
                    s += ") h=(";
                    for (auto v : h) s += std::to_string(v) + ",";
                    return s + ")";
                };
                try {
                    ProlongResultInts r = prolong_ints(f, h, opts);
                    if (r.used_fallback) {
                        ++fallbacks;
                        std::int64_t d = 0;
                        for (auto v : f) d = std::max(d, v);
                        for (auto v : h) d = std::max(d, v);
                        if (d < 3) ++fallback_small_d;
                    }
                    if (!is_toeplitz(r.full).ok) {
                        rep.fail("prolongation fails validation at " + show());
                        return;
                    }
                    for (std::size_t i = 0; i < f.size(); ++i)
                        if (r.full[i] != f[i]) {
                            rep.fail("prolongation does not start with fragment at " + show());
                            return;
                        }
                    for (std::size_t i = 0; i < h.size(); ++i)
                        if (r.full[r.full.size() - h.size() + i] != h[i]) {
                            rep.fail("prolongation does not end with vector at " + show());
                            return;
                        }
                } catch (const Error& e) {
                    rep.fail(std::string("prolong threw: ") + e.what() + " at " + show());
                }
            });
        });
    }
    rep.notes.push_back("fallback used in " + std::to_string(fallbacks) + "/" +
                        std::to_string(rep.cases) + " cases (" +
                        std::to_string(fallback_small_d) +
                        " with d < 3, where the clamp scheme cannot start)");
    return rep;
}

// ------------------------------------------------------------------
// isometry suite: bounded extension succeeds exactly under the displacement
// hypothesis and never exceeds the bound.
// ------------------------------------------------------------------
inline OracleReport oracle_bounded_isometry(std::size_t max_points, std::int64_t max_value,
                                            std::int64_t max_bound) {
    using namespace oracle_detail;
    OracleReport rep;
    rep.suite = "isometry/bounded-extension";
    for_each_integer_space_upto(max_points, max_value, [&](const Matrix& d) {
        if (!rep.pass) return;
        FiniteMetricSpace space = to_space(d);
        GrowingSpace base = import_space(space);
        for_each_partial_isometry(d, [&](const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
            if (!rep.pass || pairs.empty()) return;
            std::int64_t disp = 0;
            for (const auto& [a, b] : pairs) disp = std::max(disp, d[a][b]);
            for (std::int64_t k = 0; k <= max_bound && rep.pass; ++k) {
                bool hypothesis = disp <= k;
                bool constructed = true;
                PartialIsometry f;
                try {
                    std::vector<std::pair<PointId, PointId>> ps(pairs.begin(), pairs.end());
                    f = PartialIsometry::create(space, ps, Rational(k));
                } catch (const Error&) {
                    constructed = false;
                }
                if (constructed != hypothesis) {
                    rep.fail("bounded map construction disagrees with hypothesis (k=" +
                             std::to_string(k) + ")");
                    return;
                }
                if (!constructed) continue;
                for (PointId u = 0; u < space.size(); ++u) {
                    if (f.in_domain(u)) continue;
                    ++rep.cases;
                    GrowingSpace gs = base;
                    auto ext = extend_bounded(gs, f, u);
                    if (gs.space().dist(u, ext.image) > Rational(k) ||
                        !ext.map.preserves_distances(gs.space()) ||
                        !validate_metric(gs.space()).ok) {
                        rep.fail("bounded extension exceeded k=" + std::to_string(k));
                        return;
                    }
                }
            }
        });
    });
    return rep;
}

// ------------------------------------------------------------------
// group2 suite: a prescription is accepted exactly when the translated full
// matrix is a metric; invariance holds on sampled metrics.
// ------------------------------------------------------------------
inline OracleReport oracle_invariant_equivalence(std::int64_t max_value) {
    OracleReport rep;
    rep.suite = "group2/extension-equivalence";

    auto translated_matrix_valid = [](const InvariantMetric& m,
                                      const std::vector<Rational>& nd) {
        // Build the level-(i+1) table by translation without any
        // consistency checks, then validate the induced matrix.
        InvariantMetric out;
        out.level = m.level + 1;
        out.delta.resize(2 * m.order());
        for (std::size_t x = 0; x < m.order(); ++x) out.delta[x] = m.delta[x];
        for (std::size_t x = 0; x < m.order(); ++x)
            out.delta[m.order() ^ x] = nd[x];
        return validate_metric(induced_space(out)).ok;
    };

    // Level 1 -> 2.
    for (std::int64_t d0 = 1; d0 <= max_value && rep.pass; ++d0) {
        InvariantMetric m = InvariantMetric::level_one(Rational(d0));
        for (std::int64_t a = 1; a <= max_value && rep.pass; ++a)
            for (std::int64_t b = 1; b <= max_value && rep.pass; ++b) {
                ++rep.cases;
                std::vector<Rational> nd = {Rational(a), Rational(b)};
                bool accepted = true;
                try {
                    extend_invariant_metric(m, nd);
                } catch (const Error&) {
                    accepted = false;
                }
                if (accepted != translated_matrix_valid(m, nd))
                    rep.fail("level-1 equivalence fails at delta=" + std::to_string(d0) +
                             " nd=(" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
    }
    // Level 2 -> 3 over all valid level-2 metrics.
    for (std::int64_t d1 = 1; d1 <= max_value && rep.pass; ++d1)
        for (std::int64_t d2 = 1; d2 <= max_value && rep.pass; ++d2)
            for (std::int64_t d3 = 1; d3 <= max_value && rep.pass; ++d3) {
                InvariantMetric m;
                m.level = 2;
                m.delta = {Rational(0), Rational(d1), Rational(d2), Rational(d3)};
                if (!validate_invariant(m).ok) continue;
                std::vector<Rational> nd(4);
                for (std::int64_t a = 1; a <= max_value && rep.pass; ++a)
                    for (std::int64_t b = 1; b <= max_value && rep.pass; ++b)
                        for (std::int64_t c = 1; c <= max_value && rep.pass; ++c)
                            for (std::int64_t e = 1; e <= max_value && rep.pass; ++e) {
                                ++rep.cases;
                                nd[0] = Rational(a);
                                nd[1] = Rational(b);
                                nd[2] = Rational(c);
                                nd[3] = Rational(e);
                                bool accepted = true;
                                try {
                                    extend_invariant_metric(m, nd);
                                } catch (const Error&) {
                                    accepted = false;
                                }
                                if (accepted != translated_matrix_valid(m, nd))
                                    rep.fail("level-2 equivalence fails");
                            }
            }
    return rep;
}

inline OracleReport oracle_invariance(std::size_t max_level, std::uint64_t seeds) {
    OracleReport rep;
    rep.suite = "group2/invariance";
    for (std::size_t level = 1; level <= max_level && rep.pass; ++level)
        for (std::uint64_t seed = 1; seed <= seeds && rep.pass; ++seed) {
            InvariantMetric m =
                generic_invariant_metric(level, ValueDomain::integers(5), seed);
            const std::size_t n = m.order();
            for (GroupElement g = 0; g < n && rep.pass; ++g)
                for (GroupElement x = 0; x < n && rep.pass; ++x)
                    for (GroupElement y = 0; y < n; ++y) {
                        ++rep.cases;
                        if (m.dist(g ^ x, g ^ y) != m.dist(x, y)) {
                            rep.fail("invariance fails at level " + std::to_string(level));
                            break;
                        }
                    }
        }
    return rep;
}

// ------------------------------------------------------------------
// orbit suite: the targeted extension yields a witness for every disjoint
// (U, V) within the size bound, on seeded sampled spaces.
// ------------------------------------------------------------------
inline OracleReport oracle_targeted_witness(std::size_t space_count, std::size_t points,
                                            std::size_t uv_bound) {
    OracleReport rep;
    rep.suite = "orbit/targeted-witness";
    SeriesSpec series = SeriesSpec::blocked();
    for (std::uint64_t seed = 1; seed <= space_count && rep.pass; ++seed) {
        GrowingSpace gs = generic_space(points, ValueDomain::integers(5), seed);
        detail::for_each_disjoint_uv(points, uv_bound, [&](const std::vector<PointId>& U,
                                                           const std::vector<PointId>& V) {
            if (!rep.pass) return;
            ++rep.cases;
            auto tw = targeted_witness_extension(gs.space(), series, U, V);
            Graph g = metric_to_graph(tw.extended, tw.partition);
            for (PointId u : U)
                if (!g.adjacent(tw.witness, u)) rep.fail("witness misses a U-vertex");
            for (PointId v : V)
                if (g.adjacent(tw.witness, v)) rep.fail("witness touches a V-vertex");
            if (!check_graph_extension(g, U, V))
                rep.fail("no witness found after targeted extension");
        });
    }
    return rep;
}

}  // namespace forge
