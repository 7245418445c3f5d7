#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/extension.hpp"
#include "forge/metric_space.hpp"
#include "forge/rational.hpp"

namespace forge {

// Partition of the positive rationals into half-open interval cells
// [s_{n-1}, s_n) of lengths a_n, alternating E (n odd) and N (n even).
// Breakpoints are the exact partial sums of the chosen series.
struct SeriesSpec {
    enum class Kind { harmonic, harmonic_from, constant_then_harmonic, blocked_harmonic };
    Kind kind = Kind::harmonic;
    std::int64_t start = 1;          // harmonic_from: a_n = 1/(start + n - 1)
    Rational first_length = Rational(1);  // constant_then_harmonic: a_1

    // The blocked series repeats 1/k exactly k times, so block k tiles
    // [k-1, k) and partial sums keep denominators within lcm(1..k).  The
    // plain harmonic sums need lcm(1..n) ~ e^n, which leaves int64 around
    // coverage 4.3; blocked coverage is limited only by the value range.
    static SeriesSpec blocked() { return {Kind::blocked_harmonic, 1, Rational(1)}; }

    Rational term(std::size_t n) const {  // n >= 1
        switch (kind) {
            case Kind::harmonic: return Rational(1, static_cast<std::int64_t>(n));
            case Kind::harmonic_from:
                return Rational(1, start + static_cast<std::int64_t>(n) - 1);
            case Kind::constant_then_harmonic:
                return n == 1 ? first_length : Rational(1, static_cast<std::int64_t>(n) - 1);
            case Kind::blocked_harmonic: {
                std::size_t k = 1, before = 0;
                while (before + k < n) { before += k; ++k; }
                return Rational(1, static_cast<std::int64_t>(k));
            }
        }
        return Rational(1);
    }
};

enum class CellClass { E, N };

class IntervalPartition {
public:
    IntervalPartition(SeriesSpec series, const Rational& cover_up_to) : series_(series) {
        breakpoints_.push_back(Rational(0));
        extend_past(cover_up_to);
    }

    const SeriesSpec& series() const { return series_; }
    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const Rational& covered() const { return breakpoints_.back(); }

    // Cell index (1-based) of d; a breakpoint s_n belongs to cell n+1.
    std::size_t cell_of(const Rational& d) const {
        if (!d.is_positive())
            throw domain_error("partition/positive", "only positive values are classified");
        if (d >= breakpoints_.back())
            throw domain_error("partition/coverage", "value beyond covered range",
                               {{"value", d.str()}, {"covered", breakpoints_.back().str()}});
        std::size_t lo = 0, hi = breakpoints_.size() - 1;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (breakpoints_[mid] <= d) lo = mid;
            else hi = mid;
        }
        return lo + 1;
    }

    CellClass classify(const Rational& d) const {
        return cell_of(d) % 2 == 1 ? CellClass::E : CellClass::N;
    }

    void extend_past(const Rational& x) {
        while (breakpoints_.back() <= x) {
            std::size_t n = breakpoints_.size();  // next term index
            breakpoints_.push_back(breakpoints_.back() + series_.term(n));
        }
    }

    // First cell index n such that both cells n and n+1 start at or beyond R
    // and both have length below eps; cells n, n+1 have opposite classes.
    std::size_t small_pair_beyond(const Rational& R, const Rational& eps) {
        if (!eps.is_positive())
            throw domain_error("partition/eps", "interval length bound must be positive");
        for (std::size_t n = 1;; ++n) {
            while (breakpoints_.size() <= n + 1) extend_past(breakpoints_.back());
            if (breakpoints_[n - 1] >= R && breakpoints_[n] - breakpoints_[n - 1] < eps &&
                breakpoints_[n + 1] - breakpoints_[n] < eps)
                return n;
        }
    }

    Rational cell_midpoint(std::size_t n) const {
        return (breakpoints_[n - 1] + breakpoints_[n]) / Rational(2);
    }

private:
    SeriesSpec series_;
    std::vector<Rational> breakpoints_;
};

inline IntervalPartition build_partition(const SeriesSpec& series, const Rational& cover_up_to) {
    if (!cover_up_to.is_positive())
        throw domain_error("partition/cover", "coverage bound must be positive");
    return IntervalPartition(series, cover_up_to);
}

// Simple undirected graph on the points of a space.
struct Graph {
    std::size_t vertices = 0;
    std::set<std::pair<PointId, PointId>> edges;  // ordered pairs (a < b)

    bool adjacent(PointId a, PointId b) const {
        if (a == b) return false;
        return edges.count(a < b ? std::make_pair(a, b) : std::make_pair(b, a)) > 0;
    }
};

// Edge exactly when the distance lands in an E cell.  The partition must
// cover the diameter.
inline Graph metric_to_graph(const FiniteMetricSpace& m, const IntervalPartition& p) {
    Rational diam = m.diameter();
    if (m.size() > 1 && diam >= p.covered())
        throw domain_error("graph/coverage", "partition does not cover the diameter",
                           {{"required", diam.str()}, {"covered", p.covered().str()}});
    Graph g;
    g.vertices = m.size();
    for (PointId a = 0; a < m.size(); ++a)
        for (PointId b = a + 1; b < m.size(); ++b)
            if (p.classify(m.dist(a, b)) == CellClass::E) g.edges.insert({a, b});
    return g;
}

// A vertex outside U and V joined to everything in U and nothing in V;
// smallest id wins.  Empty U and V accept any vertex.
inline std::optional<PointId> check_graph_extension(const Graph& g,
                                                    const std::vector<PointId>& U,
                                                    const std::vector<PointId>& V) {
    for (PointId u : U)
        for (PointId v : V)
            if (u == v)
                throw domain_error("graph/overlap", "U and V must be disjoint",
                                   {{"vertex", std::to_string(u)}});
    for (PointId x = 0; x < g.vertices; ++x) {
        bool excluded = false;
        for (PointId u : U) excluded = excluded || u == x;
        for (PointId v : V) excluded = excluded || v == x;
        if (excluded) continue;
        bool ok = true;
        for (PointId u : U) ok = ok && g.adjacent(x, u);
        for (PointId v : V) ok = ok && !g.adjacent(x, v);
        if (ok) return x;
    }
    return std::nullopt;
}

struct TargetedWitness {
    FiniteMetricSpace extended;
    IntervalPartition partition;
    PointId witness;
    std::size_t e_cell, n_cell;  // the consecutive cells used
};

// The constructive witness step: choose R above half the diameter and a
// consecutive E/N cell pair of length below half the minimum distance beyond
// R, then add a point whose distances to U sit in the E cell interior, to V
// in the N cell interior, and to everything else in the E cell as well.  The
// prescription is always consistent: any two prescribed values differ by
// less than the minimum distance and sum to more than the diameter.
// Prescribing every point keeps the extended diameter inside the covered
// range (free midpoint choices could push it beyond what short-cell series
// can reach exactly).
inline TargetedWitness targeted_witness_extension(const FiniteMetricSpace& m,
                                                  const SeriesSpec& series,
                                                  const std::vector<PointId>& U,
                                                  const std::vector<PointId>& V) {
    for (PointId u : U)
        for (PointId v : V)
            if (u == v) throw domain_error("graph/overlap", "U and V must be disjoint");

    Rational diam = m.diameter();
    Rational mind = m.min_distance();
    Rational R = diam / Rational(2) + Rational(1, 2);
    Rational eps = mind.is_positive() ? mind / Rational(2) : Rational(1, 2);

    IntervalPartition part(series, R + Rational(1));
    std::size_t n = part.small_pair_beyond(R, eps);
    std::size_t e_cell = n % 2 == 1 ? n : n + 1;
    std::size_t n_cell = n % 2 == 1 ? n + 1 : n;

    GrowingSpace gs = import_space(m);
    std::vector<std::pair<PointId, Rational>> targets;
    std::vector<bool> in_v(m.size(), false);
    for (PointId v : V) in_v[v] = true;
    for (PointId p = 0; p < m.size(); ++p)
        targets.emplace_back(p, part.cell_midpoint(in_v[p] ? n_cell : e_cell));
    PointId z = extend_point(gs, DistanceSpec::of(std::move(targets)));

    part.extend_past(gs.space().diameter());
    return {gs.space(), std::move(part), z, e_cell, n_cell};
}

struct ExperimentRow {
    std::size_t size = 0;
    std::size_t pairs_checked = 0;
    std::size_t with_witness = 0;
    Rational fraction() const {
        return pairs_checked == 0 ? Rational(1)
                                  : Rational(static_cast<std::int64_t>(with_witness),
                                             static_cast<std::int64_t>(pairs_checked));
    }
};

namespace detail {

template <class Fn>
void for_each_disjoint_uv(std::size_t n, std::size_t uv_bound, Fn&& fn) {
    // Every assignment of each point to U, V or neither, |U|+|V| <= bound.
    std::vector<PointId> U, V;
    auto rec = [&](auto&& self, PointId next) -> void {
        if (U.size() + V.size() <= uv_bound && next == n) {
            fn(U, V);
            return;
        }
        if (next == n) return;
        self(self, next + 1);
        if (U.size() + V.size() < uv_bound) {
            U.push_back(next);
            self(self, next + 1);
            U.pop_back();
            V.push_back(next);
            self(self, next + 1);
            V.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace detail

// Witness-fraction table over growing sampled spaces: for each size, the
// fraction of disjoint (U, V) with |U|+|V| <= uv_bound having a witness
// among the existing vertices.
inline std::vector<ExperimentRow> orbit_graph_experiment(const std::vector<std::size_t>& sizes,
                                                         const ValueDomain& domain,
                                                         std::uint64_t seed,
                                                         std::size_t uv_bound,
                                                         const SeriesSpec& series = {}) {
    std::vector<ExperimentRow> rows;
    for (std::size_t size : sizes) {
        GrowingSpace gs = generic_space(size, domain, seed);
        IntervalPartition part(series, gs.space().diameter() + Rational(1));
        Graph g = metric_to_graph(gs.space(), part);
        ExperimentRow row;
        row.size = size;
        detail::for_each_disjoint_uv(size, uv_bound, [&](const std::vector<PointId>& U,
                                                         const std::vector<PointId>& V) {
            ++row.pairs_checked;
            if (check_graph_extension(g, U, V)) ++row.with_witness;
        });
        rows.push_back(row);
    }
    return rows;
}

}  // namespace forge
