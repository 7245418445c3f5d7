#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/metric_space.hpp"
#include "forge/rational.hpp"
#include "forge/rng.hpp"

namespace forge {

// Prescribed distances from a yet-to-be-added point to a subset of points.
// Entries are kept sorted by point id so identical specs compare equal.
struct DistanceSpec {
    std::vector<std::pair<PointId, Rational>> targets;

    static DistanceSpec of(std::vector<std::pair<PointId, Rational>> t) {
        std::sort(t.begin(), t.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return DistanceSpec{std::move(t)};
    }

    bool contains(PointId p) const {
        for (const auto& [q, v] : targets)
            if (q == p) return true;
        return false;
    }
};

struct SpecViolation {
    enum class Kind { non_positive, pair };
    Kind kind;
    PointId a = 0, b = 0;  // the violating point (non_positive) or pair
    Rational ga, gb, d;
};

struct SpecReport {
    bool ok = true;
    std::vector<SpecViolation> violations;
};

// The one-point consistency check: every prescribed value positive (a zero
// value would duplicate an existing point and is rejected), and
// |g(a)-g(b)| <= d(a,b) <= g(a)+g(b) for every target pair.
inline SpecReport check_extension_spec(const FiniteMetricSpace& m, const DistanceSpec& s) {
    SpecReport report;
    for (const auto& [p, g] : s.targets) {
        if (p >= m.size())
            throw domain_error("spec/unknown-point", "target point out of range",
                               {{"point", std::to_string(p)}});
        if (!g.is_positive())
            report.violations.push_back({SpecViolation::Kind::non_positive, p, p, g, g, Rational(0)});
    }
    for (std::size_t i = 0; i < s.targets.size(); ++i)
        for (std::size_t j = i + 1; j < s.targets.size(); ++j) {
            const auto& [a, ga] = s.targets[i];
            const auto& [b, gb] = s.targets[j];
            const Rational& d = m.dist(a, b);
            if ((ga - gb).abs() > d || d > ga + gb)
                report.violations.push_back({SpecViolation::Kind::pair, a, b, ga, gb, d});
        }
    report.ok = report.violations.empty();
    return report;
}

struct ExtensionLogEntry {
    DistanceSpec spec;
    PointId new_point;
};

// A metric space together with the append-only log of extension steps that
// produced it.  All growth goes through extend_point, whose free choices are
// deterministic, so replaying the log from the empty space is bit-identical.
class GrowingSpace {
public:
    GrowingSpace() = default;

    const FiniteMetricSpace& space() const { return space_; }
    const std::vector<ExtensionLogEntry>& log() const { return log_; }
    std::size_t size() const { return space_.size(); }

    void rename(std::vector<std::string> names) { space_.rename(std::move(names)); }

    // Internal: used by extend_point only.
    PointId apply(const DistanceSpec& spec, const std::vector<Rational>& distances,
                  std::string name) {
        PointId id = space_.add_point(std::move(name), distances);
        log_.push_back({spec, id});
        return id;
    }

private:
    FiniteMetricSpace space_;
    std::vector<ExtensionLogEntry> log_;
};

namespace detail {

// Feasible interval for the distance from a partially-placed new point to
// point p, given the distances fixed so far.  Non-empty whenever the fixed
// part is consistent.
inline std::pair<Rational, Rational> free_distance_interval(
    const FiniteMetricSpace& m, const std::vector<std::pair<PointId, Rational>>& fixed,
    PointId p) {
    Rational lo(0), hi(0);
    bool have_hi = false;
    for (const auto& [q, dq] : fixed) {
        lo = max(lo, (dq - m.dist(q, p)).abs());
        Rational u = dq + m.dist(q, p);
        if (!have_hi || u < hi) { hi = u; have_hi = true; }
    }
    if (!have_hi) hi = Rational(1);  // unconstrained: hi doubles as the default pick below
    return {lo, hi};
}

}  // namespace detail

// Realizes a consistent DistanceSpec by a new point.  Distances to points
// outside the target set are fixed to the midpoint of the feasible interval,
// computed incrementally in point order; a fully unconstrained distance
// defaults to 1.  Throws on a spec violation, carrying the offending pair.
inline PointId extend_point(GrowingSpace& gs, const DistanceSpec& spec,
                            std::string name = {}) {
    const FiniteMetricSpace& m = gs.space();
    SpecReport report = check_extension_spec(m, spec);
    if (!report.ok) {
        const SpecViolation& v = report.violations.front();
        if (v.kind == SpecViolation::Kind::non_positive)
            throw domain_error("extend/non-positive",
                               "prescribed distance must be positive (a new point is required)",
                               {{"point", std::to_string(v.a)}, {"value", v.ga.str()}});
        throw domain_error("extend/pair",
                           "prescribed distances violate |g(a)-g(b)| <= d(a,b) <= g(a)+g(b)",
                           {{"a", std::to_string(v.a)},
                            {"b", std::to_string(v.b)},
                            {"g(a)", v.ga.str()},
                            {"g(b)", v.gb.str()},
                            {"d(a,b)", v.d.str()}});
    }

    std::vector<std::pair<PointId, Rational>> fixed = spec.targets;
    std::vector<Rational> row(m.size());
    std::vector<bool> set(m.size(), false);
    for (const auto& [p, g] : spec.targets) { row[p] = g; set[p] = true; }
    for (PointId p = 0; p < m.size(); ++p) {
        if (set[p]) continue;
        auto [lo, hi] = detail::free_distance_interval(m, fixed, p);
        Rational pick = fixed.empty() ? Rational(1) : (lo + hi) / Rational(2);
        row[p] = pick;
        fixed.emplace_back(p, pick);
    }
    if (name.empty()) name = "p" + std::to_string(m.size());
    return gs.apply(spec, row, std::move(name));
}

// Rebuilds a space from an extension log; used to check replay determinism.
inline GrowingSpace replay(const std::vector<ExtensionLogEntry>& log) {
    GrowingSpace gs;
    for (const auto& entry : log) extend_point(gs, entry.spec);
    return gs;
}

// Imports an existing (valid) space as a GrowingSpace by replaying each
// point as a full-target extension of the previous ones.
inline GrowingSpace import_space(const FiniteMetricSpace& m) {
    GrowingSpace gs;
    for (PointId p = 0; p < m.size(); ++p) {
        std::vector<std::pair<PointId, Rational>> targets;
        for (PointId q = 0; q < p; ++q) targets.emplace_back(q, m.dist(q, p));
        extend_point(gs, DistanceSpec::of(std::move(targets)), m.name(p));
    }
    return gs;
}

// Diameter of the sphere of points realizing the spec: twice the minimum
// prescribed value.  An empty spec has unbounded realization set.
inline Rational sphere_diameter_bound(const FiniteMetricSpace& m, const DistanceSpec& s) {
    if (s.targets.empty())
        throw domain_error("sphere/empty", "empty spec: realization set has unbounded diameter");
    SpecReport report = check_extension_spec(m, s);
    if (!report.ok)
        throw domain_error("sphere/spec", "spec fails the extension consistency check");
    Rational mn = s.targets.front().second;
    for (const auto& [p, g] : s.targets) mn = min(mn, g);
    return Rational(2) * mn;
}

// Adds two points both realizing the spec whose mutual distance attains the
// sphere diameter bound exactly.
inline std::pair<PointId, PointId> realize_sphere_pair(GrowingSpace& gs,
                                                       const DistanceSpec& s) {
    Rational bound = sphere_diameter_bound(gs.space(), s);
    PointId z1 = extend_point(gs, s);
    auto targets = s.targets;
    targets.emplace_back(z1, bound);
    PointId z2 = extend_point(gs, DistanceSpec::of(std::move(targets)));
    return {z1, z2};
}

// The three value domains used for sampled spaces: rationals with
// denominator dividing q (capped by max_value), integers 1..max, and the
// graph-metric set {1,2}.
struct ValueDomain {
    enum class Kind { rational_bounded_den, integer_range, graph01 };
    Kind kind = Kind::integer_range;
    std::int64_t max_value = 5;
    std::int64_t max_den = 1;  // rational_bounded_den only

    static ValueDomain integers(std::int64_t max) { return {Kind::integer_range, max, 1}; }
    static ValueDomain rationals(std::int64_t max, std::int64_t den) {
        return {Kind::rational_bounded_den, max, den};
    }
    static ValueDomain graph() { return {Kind::graph01, 2, 1}; }

    // Grid step: domain values are the positive multiples of this step up to
    // max_value.  The step divides every representable value, so feasible
    // intervals computed from domain values always contain a grid point.
    Rational step() const {
        switch (kind) {
            case Kind::rational_bounded_den: return Rational(1, max_den);
            default: return Rational(1);
        }
    }

    std::vector<Rational> candidates(const Rational& lo, const Rational& hi) const {
        std::vector<Rational> out;
        if (kind == Kind::graph01) {
            for (std::int64_t v : {1, 2})
                if (Rational(v) >= lo && Rational(v) <= hi) out.emplace_back(v);
            return out;
        }
        Rational st = step();
        std::int64_t k_lo = std::max<std::int64_t>(1, (lo / st).ceil());
        std::int64_t k_hi = std::min((hi / st).floor(), (Rational(max_value) / st).floor());
        for (std::int64_t k = k_lo; k <= k_hi; ++k) out.push_back(Rational(k) * st);
        return out;
    }
};

// n-point space built by n-1 random admissible extensions, each distance
// sampled uniformly from the domain values inside its feasible interval.
// Deterministic under a fixed seed.
inline GrowingSpace generic_space(std::size_t n, const ValueDomain& domain,
                                  std::uint64_t seed) {
    if (n == 0) throw domain_error("generic/size", "need at least one point");
    SplitMix64 rng(seed);
    GrowingSpace gs;
    extend_point(gs, DistanceSpec{});
    for (std::size_t i = 1; i < n; ++i) {
        const FiniteMetricSpace& m = gs.space();
        std::vector<std::pair<PointId, Rational>> fixed;
        for (PointId p = 0; p < m.size(); ++p) {
            Rational lo(0), hi(domain.max_value);
            if (!fixed.empty()) {
                auto [l, h] = detail::free_distance_interval(m, fixed, p);
                lo = l;
                hi = min(h, Rational(domain.max_value));
            }
            auto choices = domain.candidates(lo, hi);
            if (choices.empty())
                throw domain_error("generic/empty-interval",
                                   "no domain value in feasible interval (unreachable for the "
                                   "supported domains)");
            fixed.emplace_back(p, choices[rng.uniform(choices.size())]);
        }
        extend_point(gs, DistanceSpec::of(std::move(fixed)));
    }
    return gs;
}

}  // namespace forge
