#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/extension.hpp"
#include "forge/metric_space.hpp"
#include "forge/rational.hpp"

namespace forge {

// A distance-preserving partial injection of a space into itself, optionally
// carrying a displacement bound k with d(a, f(a)) <= k for every mapped a.
class PartialIsometry {
public:
    PartialIsometry() = default;

    static PartialIsometry create(const FiniteMetricSpace& m,
                                  std::vector<std::pair<PointId, PointId>> pairs,
                                  std::optional<Rational> bound = std::nullopt) {
        PartialIsometry f;
        f.bound_ = std::move(bound);
        for (const auto& pr : pairs) f.append_checked(m, pr);
        return f;
    }

    const std::vector<std::pair<PointId, PointId>>& pairs() const { return pairs_; }
    const std::optional<Rational>& bound() const { return bound_; }
    bool empty() const { return pairs_.empty(); }

    std::optional<PointId> image(PointId a) const {
        for (const auto& [x, y] : pairs_)
            if (x == a) return y;
        return std::nullopt;
    }
    std::optional<PointId> preimage(PointId b) const {
        for (const auto& [x, y] : pairs_)
            if (y == b) return x;
        return std::nullopt;
    }
    bool in_domain(PointId a) const { return image(a).has_value(); }
    bool in_range(PointId b) const { return preimage(b).has_value(); }

    PartialIsometry inverse() const {
        PartialIsometry f;
        f.bound_ = bound_;
        for (const auto& [x, y] : pairs_) f.pairs_.emplace_back(y, x);
        return f;
    }

    PartialIsometry extended(const FiniteMetricSpace& m,
                             std::pair<PointId, PointId> pr) const {
        PartialIsometry f = *this;
        f.append_checked(m, pr);
        return f;
    }

    Rational max_displacement(const FiniteMetricSpace& m) const {
        Rational d(0);
        for (const auto& [x, y] : pairs_) d = max(d, m.dist(x, y));
        return d;
    }

    // Every mapped pair preserves distances against every other; exact.
    bool preserves_distances(const FiniteMetricSpace& m) const {
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            for (std::size_t j = i + 1; j < pairs_.size(); ++j)
                if (m.dist(pairs_[i].first, pairs_[j].first) !=
                    m.dist(pairs_[i].second, pairs_[j].second))
                    return false;
        return true;
    }

private:
    void append_checked(const FiniteMetricSpace& m, std::pair<PointId, PointId> pr) {
        auto [a, b] = pr;
        if (a >= m.size() || b >= m.size())
            throw domain_error("isometry/point", "pair references unknown point");
        for (const auto& [x, y] : pairs_) {
            if (x == a || y == b)
                throw domain_error("isometry/injective", "duplicate domain or range point",
                                   {{"a", std::to_string(a)}, {"b", std::to_string(b)}});
            if (m.dist(x, a) != m.dist(y, b))
                throw domain_error("isometry/distance", "pair breaks distance preservation",
                                   {{"a", std::to_string(a)},
                                    {"b", std::to_string(b)},
                                    {"against", std::to_string(x)}});
        }
        if (bound_ && m.dist(a, b) > *bound_)
            throw domain_error("isometry/bound", "displacement exceeds the bound",
                               {{"a", std::to_string(a)},
                                {"b", std::to_string(b)},
                                {"d", m.dist(a, b).str()},
                                {"bound", bound_->str()}});
        pairs_.emplace_back(a, b);
    }

    std::vector<std::pair<PointId, PointId>> pairs_;
    std::optional<Rational> bound_;
};

struct BoundedExtension {
    PointId image;
    PartialIsometry map;
};

// Extends the map to u: the image v realizes d(b_i, v) = d(a_i, u) exactly,
// with d(u, v) the midpoint of its feasible interval capped by the map's
// bound.  The interval never conflicts with the bound because
// |d(u,a_i) - d(u,b_i)| <= d(a_i,b_i) <= k.  A forced zero displacement
// returns u itself.
inline BoundedExtension extend_bounded(GrowingSpace& gs, const PartialIsometry& f,
                                       PointId u) {
    const FiniteMetricSpace& m = gs.space();
    if (u >= m.size()) throw domain_error("isometry/point", "unknown point");
    if (f.in_domain(u))
        throw domain_error("isometry/in-domain", "point already has an image",
                           {{"point", std::to_string(u)}});

    Rational lo(0), hi(0);
    bool have_hi = false;
    std::vector<std::pair<PointId, Rational>> targets;
    for (const auto& [a, b] : f.pairs()) {
        Rational g = m.dist(a, u);
        targets.emplace_back(b, g);
        lo = max(lo, (m.dist(u, b) - g).abs());
        Rational up = m.dist(u, b) + g;
        if (!have_hi || up < hi) { hi = up; have_hi = true; }
    }
    if (f.bound()) {
        if (!have_hi || *f.bound() < hi) { hi = *f.bound(); have_hi = true; }
        if (lo > hi)
            throw domain_error("isometry/bound-infeasible",
                               "no image within the bound (bound invariant was broken)");
    }

    if (have_hi) {
        Rational x = (lo + hi) / Rational(2);
        if (x.is_zero()) return {u, f.extended(m, {u, u})};
        targets.emplace_back(u, x);
        PointId v = extend_point(gs, DistanceSpec::of(std::move(targets)));
        return {v, f.extended(gs.space(), {u, v})};
    }
    // No mapped pairs and no bound: nothing constrains the image.
    return {u, f.extended(m, {u, u})};
}

// Realizes a point with prescribed exact distances to an image tuple and
// distance below eps to the anchor point.
inline PointId approximate_isometry(GrowingSpace& gs, const std::vector<PointId>& base,
                                    const std::vector<PointId>& images, PointId vn,
                                    PointId anchor, const Rational& eps) {
    const FiniteMetricSpace& m = gs.space();
    if (!eps.is_positive()) throw domain_error("approx/eps", "eps must be positive");
    if (base.size() != images.size())
        throw domain_error("approx/tuples", "base and image tuples differ in length");
    if (!tuples_isometric(m, base, images))
        throw domain_error("approx/tuples", "base and image tuples are not isometric");
    for (std::size_t i = 0; i < base.size(); ++i) {
        Rational gap = (m.dist(images[i], anchor) - m.dist(base[i], vn)).abs();
        if (gap >= eps)
            throw domain_error("approx/hypothesis",
                               "|d(v_i', anchor) - d(v_i, v_n)| < eps fails",
                               {{"i", std::to_string(i)}, {"gap", gap.str()}});
    }
    for (std::size_t i = 0; i < base.size(); ++i)
        if (base[i] == vn) return images[i];  // exact copy already present

    std::vector<std::pair<PointId, Rational>> targets;
    Rational lb(0), ub(0);
    bool have_ub = false, anchor_fixed = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
        Rational g = m.dist(base[i], vn);
        if (images[i] == anchor) anchor_fixed = true;
        bool dup = false;
        for (const auto& [p, v] : targets) dup = dup || p == images[i];
        if (!dup) targets.emplace_back(images[i], g);
        lb = max(lb, (m.dist(images[i], anchor) - g).abs());
        Rational up = g + m.dist(images[i], anchor);
        if (!have_ub || up < ub) { ub = up; have_ub = true; }
    }
    if (!anchor_fixed) {
        Rational hi = have_ub ? min(ub, eps) : eps;
        targets.emplace_back(anchor, (lb + hi) / Rational(2));
    }
    return extend_point(gs, DistanceSpec::of(std::move(targets)));
}

struct UnboundednessCertificate {
    std::size_t stage;
    PointId point;
    Rational displacement;
};

struct BuildUnboundedResult {
    PartialIsometry map;
    std::vector<UnboundednessCertificate> certificates;
};

// Back-and-forth with escalation: odd stages pull the first point missing
// from the range, stages divisible by 4 push the first point missing from
// the domain, and the remaining stages place a point at distance n from the
// current domain (n counts these stages) and ship it to an image at distance
// >= n, which exists because the realization sphere has diameter exactly 2n.
inline BuildUnboundedResult build_unbounded(GrowingSpace& gs, std::size_t stages) {
    if (stages == 0) throw domain_error("unbounded/stages", "need at least one stage");
    if (gs.size() == 0) extend_point(gs, DistanceSpec{});
    PartialIsometry f;
    std::vector<UnboundednessCertificate> certs;
    std::size_t gadgets = 0;

    auto first_missing = [&](auto pred) -> std::optional<PointId> {
        for (PointId p = 0; p < gs.size(); ++p)
            if (!pred(p)) return p;
        return std::nullopt;
    };

    for (std::size_t s = 1; s <= stages; ++s) {
        if (s % 2 == 1) {
            auto u = first_missing([&](PointId p) { return f.in_range(p); });
            if (!u) continue;
            auto ext = extend_bounded(gs, f.inverse(), *u);
            f = ext.map.inverse();
        } else if (s % 4 == 0) {
            auto u = first_missing([&](PointId p) { return f.in_domain(p); });
            if (!u) continue;
            f = extend_bounded(gs, f, *u).map;
        } else {
            const std::size_t n = ++gadgets;
            const FiniteMetricSpace& m = gs.space();
            std::vector<PointId> domain, range;
            for (const auto& [a, b] : f.pairs()) { domain.push_back(a); range.push_back(b); }
            PointId a0 = *std::min_element(domain.begin(), domain.end());

            std::vector<std::pair<PointId, Rational>> zt;
            for (PointId a : domain) zt.emplace_back(a, Rational(n) + m.dist(a, a0));
            PointId z = extend_point(gs, DistanceSpec::of(std::move(zt)));

            std::vector<std::pair<PointId, Rational>> wt;
            for (std::size_t i = 0; i < domain.size(); ++i)
                wt.emplace_back(range[i], gs.space().dist(z, domain[i]));
            auto [w1, w2] = realize_sphere_pair(gs, DistanceSpec::of(std::move(wt)));
            PointId w = gs.space().dist(z, w1) >= gs.space().dist(z, w2) ? w1 : w2;
            if (gs.space().dist(z, w) < Rational(n))
                throw domain_error("unbounded/displacement",
                                   "image landed closer than the sphere diameter allows");
            f = f.extended(gs.space(), {z, w});
            certs.push_back({s, z, gs.space().dist(z, w)});
        }
    }
    return {std::move(f), std::move(certs)};
}

// ------------------------------------------------------------------
// Free words and walks
// ------------------------------------------------------------------

// Reduced words over generators; lowercase letters are generators, the
// matching uppercase letters their inverses ("abAB" is a b a^-1 b^-1).
struct FreeWord {
    struct Letter {
        std::size_t gen;
        bool inverse;
        bool operator==(const Letter&) const = default;
    };
    std::vector<Letter> letters;

    static FreeWord parse(std::string_view text) {
        FreeWord w;
        for (char c : text) {
            if (c >= 'a' && c <= 'z')
                w.letters.push_back({static_cast<std::size_t>(c - 'a'), false});
            else if (c >= 'A' && c <= 'Z')
                w.letters.push_back({static_cast<std::size_t>(c - 'A'), true});
            else
                throw parse_error("word/letter", std::string("invalid letter '") + c + "'");
        }
        return w;
    }

    std::string str() const {
        std::string s;
        for (const auto& l : letters)
            s += static_cast<char>((l.inverse ? 'A' : 'a') + l.gen);
        return s;
    }

    bool empty() const { return letters.empty(); }

    bool is_reduced() const {
        for (std::size_t i = 0; i + 1 < letters.size(); ++i)
            if (letters[i].gen == letters[i + 1].gen &&
                letters[i].inverse != letters[i + 1].inverse)
                return false;
        return true;
    }

    bool is_cyclically_reduced() const {
        if (!is_reduced()) return false;
        if (letters.size() < 2) return true;
        const auto& a = letters.front();
        const auto& b = letters.back();
        return !(a.gen == b.gen && a.inverse != b.inverse);
    }

    std::size_t max_generator() const {
        std::size_t g = 0;
        for (const auto& l : letters) g = std::max(g, l.gen);
        return g;
    }
};

struct WordWalk {
    std::vector<PointId> trace;  // base = trace.front(), end = trace.back()
    Rational displacement;       // d(base, end)
};

namespace detail {

inline PointId fresh_equidistant_point(GrowingSpace& gs, const Rational& dist) {
    std::vector<std::pair<PointId, Rational>> targets;
    for (PointId p = 0; p < gs.size(); ++p) targets.emplace_back(p, dist);
    return extend_point(gs, DistanceSpec::of(std::move(targets)));
}

// Evaluates the word letter by letter (rightmost letter first) on a chain of
// fresh points, all at mutual distance D = max(target, diam/2, 1).  Every
// letter extension is trivially consistent at distance D, the trace indices
// strictly increase, and d(base, end) = D >= target exactly.
inline WordWalk perform_word_walk(GrowingSpace& gs, std::vector<PartialIsometry>& maps,
                                  const FreeWord& w, const Rational& target) {
    Rational D = max(max(target, Rational(1)), gs.space().diameter() / Rational(2));
    WordWalk walk;
    PointId cur = fresh_equidistant_point(gs, D);
    walk.trace.push_back(cur);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        PointId nxt = fresh_equidistant_point(gs, D);
        PartialIsometry& m = maps[it->gen];
        m = it->inverse ? m.extended(gs.space(), {nxt, cur})
                        : m.extended(gs.space(), {cur, nxt});
        cur = nxt;
        walk.trace.push_back(cur);
    }
    walk.displacement = gs.space().dist(walk.trace.front(), walk.trace.back());
    return walk;
}

// One totality step per call, rotating over (map, side); keeps the maps
// heading toward bijections the way alternating domain/range passes do.
inline void totality_step(GrowingSpace& gs, std::vector<PartialIsometry>& maps,
                          std::size_t tick) {
    if (maps.empty()) return;
    std::size_t which = (tick / 2) % maps.size();
    bool domain_side = tick % 2 == 0;
    PartialIsometry& m = maps[which];
    for (PointId p = 0; p < gs.size(); ++p) {
        if (domain_side && !m.in_domain(p)) {
            m = extend_bounded(gs, m, p).map;
            return;
        }
        if (!domain_side && !m.in_range(p)) {
            m = extend_bounded(gs, m.inverse(), p).map.inverse();
            return;
        }
    }
}

}  // namespace detail

struct WordCertificate {
    std::string word;
    std::size_t revisit;
    PointId base;
    PointId end;
    Rational displacement;
};

struct FreePairResult {
    PartialIsometry a, b;
    std::vector<WordCertificate> certificates;
};

// Two partial isometries with displacement witnesses for every scheduled
// word: words are visited round-robin, and the walk for revisit r moves its
// base point by at least r.  Walk stages alternate with totality bookkeeping.
inline FreePairResult build_free_pair(GrowingSpace& gs, const std::vector<FreeWord>& words,
                                      std::size_t revisits) {
    for (const auto& w : words) {
        if (w.empty())
            throw domain_error("free/word", "words must be non-empty");
        if (!w.is_cyclically_reduced())
            throw domain_error("free/word", "words must be cyclically reduced",
                               {{"word", w.str()}});
        if (w.max_generator() > 1)
            throw domain_error("free/word", "only letters a, b are available here",
                               {{"word", w.str()}});
    }
    if (gs.size() == 0) extend_point(gs, DistanceSpec{});
    std::vector<PartialIsometry> maps(2);
    std::vector<WordCertificate> certs;
    std::size_t tick = 0;
    for (std::size_t r = 1; r <= revisits; ++r)
        for (const auto& w : words) {
            auto walk = detail::perform_word_walk(gs, maps, w, Rational(r));
            certs.push_back({w.str(), r, walk.trace.front(), walk.trace.back(),
                             walk.displacement});
            detail::totality_step(gs, maps, tick++);
        }
    return {maps[0], maps[1], std::move(certs)};
}

// ------------------------------------------------------------------
// Homogeneity via bounded correctors on top of unbounded generators
// ------------------------------------------------------------------

struct TuplePair {
    std::vector<PointId> alpha, beta;
};

struct HomogeneityCertificate {
    std::size_t pair_index;
    std::vector<PointId> image_of_alpha;  // composite applied to alpha
    bool exact;
};

struct FreenessCertificate {
    std::string word;
    Rational displacement;    // witness displacement of the word in the h's
    Rational corrector_sum;   // sum of corrector bounds along the letters
    bool exceeds;
};

struct ComposeResult {
    std::vector<PartialIsometry> unbounded;   // h_i
    std::vector<PartialIsometry> correctors;  // n_i with n_i(h_i(alpha)) = beta
    std::vector<Rational> corrector_bounds;
    std::vector<HomogeneityCertificate> homogeneity;
    std::vector<FreenessCertificate> freeness;
};

namespace detail {

// Cyclically reduced non-empty words over `gens` generators in shortlex
// order, at most `budget` of them.
inline std::vector<FreeWord> enumerate_cyclic_words(std::size_t gens, std::size_t budget) {
    std::vector<FreeWord> out;
    if (gens == 0 || budget == 0) return out;
    const std::size_t alphabet = 2 * gens;
    for (std::size_t len = 1; out.size() < budget && len <= budget + 2; ++len) {
        std::vector<std::size_t> idx(len, 0);
        for (;;) {
            FreeWord w;
            for (std::size_t i : idx) w.letters.push_back({i / 2, i % 2 == 1});
            if (w.is_cyclically_reduced()) {
                out.push_back(std::move(w));
                if (out.size() == budget) return out;
            }
            std::size_t i = len;
            while (i > 0 && idx[i - 1] == alphabet - 1) { idx[i - 1] = 0; --i; }
            if (i == 0) break;
            ++idx[i - 1];
        }
    }
    return out;
}

}  // namespace detail

// For each isometric tuple pair, builds an unbounded-flavoured generator h_i
// and a bounded corrector n_i so that the composite n_i(h_i(.)) maps alpha_i
// to beta_i exactly.  Freeness certificates then pit each word's displacement
// witness against the sum of the corrector bounds along its letters: the
// walk target is chosen one above that sum, so the witness always exceeds
// what bounded correctors could cancel.
inline ComposeResult compose_dense_free(GrowingSpace& gs,
                                        const std::vector<TuplePair>& pairs,
                                        std::size_t word_budget) {
    ComposeResult result;
    for (const auto& tp : pairs)
        if (!tuples_isometric(gs.space(), tp.alpha, tp.beta))
            throw domain_error("dense-free/tuples", "tuple pair is not isometric");
    if (gs.size() == 0) extend_point(gs, DistanceSpec{});

    result.unbounded.assign(pairs.size(), PartialIsometry{});
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<PointId> gamma;
        for (PointId a : pairs[i].alpha) {
            if (auto im = result.unbounded[i].image(a)) {
                gamma.push_back(*im);
                continue;
            }
            auto ext = extend_bounded(gs, result.unbounded[i], a);
            result.unbounded[i] = ext.map;
            gamma.push_back(ext.image);
        }
        Rational k(0);
        std::vector<std::pair<PointId, PointId>> cpairs;
        for (std::size_t s = 0; s < gamma.size(); ++s) {
            bool dup = false;
            for (const auto& [x, y] : cpairs) dup = dup || x == gamma[s];
            if (!dup) cpairs.emplace_back(gamma[s], pairs[i].beta[s]);
            k = max(k, gs.space().dist(gamma[s], pairs[i].beta[s]));
        }
        PartialIsometry corrector = PartialIsometry::create(gs.space(), cpairs, k);
        HomogeneityCertificate cert{i, {}, true};
        for (std::size_t s = 0; s < pairs[i].alpha.size(); ++s) {
            auto mid = result.unbounded[i].image(pairs[i].alpha[s]);
            auto fin = mid ? corrector.image(*mid) : std::nullopt;
            cert.image_of_alpha.push_back(fin.value_or(gs.size()));
            cert.exact = cert.exact && fin && *fin == pairs[i].beta[s];
        }
        result.correctors.push_back(std::move(corrector));
        result.corrector_bounds.push_back(k);
        result.homogeneity.push_back(std::move(cert));
    }

    for (const auto& w : detail::enumerate_cyclic_words(pairs.size(), word_budget)) {
        Rational sum(0);
        for (const auto& l : w.letters) sum += result.corrector_bounds[l.gen];
        auto walk = detail::perform_word_walk(gs, result.unbounded, w, sum + Rational(1));
        result.freeness.push_back({w.str(), walk.displacement, sum,
                                   walk.displacement > sum});
    }
    return result;
}

}  // namespace forge
