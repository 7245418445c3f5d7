#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/metric_space.hpp"
#include "forge/rational.hpp"

// Shift-invariant distance functions on the integers, handled through their
// finite initial fragments f(1),...,f(n) (f(0) = 0 is implicit, indices in
// reports are 1-based).  A fragment is kept valid when
//
//     f(i) > 0   and   |f(i)-f(j)| <= f(i+j) <= f(i)+f(j)   for i+j <= n,
//
// which is exactly the triangle inequality of the induced metric
// d(i,j) = f(|i-j|).  A vector h is admissible for f when
// |h(i)-h(i+k)| <= f(k) <= h(i)+h(i+k) — i.e. h is a possible profile of
// distances from one point to a run of consecutive integers.

namespace forge {

struct ToeplitzViolation {
    std::size_t i, j;  // the failing pair, 1-based; constraint sits at f(i+j)
};

struct ToeplitzReport {
    bool ok = true;
    std::vector<std::size_t> non_positive;
    std::vector<ToeplitzViolation> violations;
};

namespace detail {

inline Rational abs_of(const Rational& v) { return v.abs(); }
inline std::int64_t abs_of(std::int64_t v) { return v < 0 ? -v : v; }

template <class T>
ToeplitzReport is_toeplitz_impl(std::span<const T> f) {
    ToeplitzReport r;
    for (std::size_t i = 1; i <= f.size(); ++i)
        if (!(f[i - 1] > T(0))) r.non_positive.push_back(i);
    for (std::size_t i = 1; i <= f.size(); ++i)
        for (std::size_t j = i; i + j <= f.size(); ++j) {
            const T& a = f[i - 1];
            const T& b = f[j - 1];
            const T& c = f[i + j - 1];
            if (abs_of(a - b) > c || c > a + b) r.violations.push_back({i, j});
        }
    r.ok = r.non_positive.empty() && r.violations.empty();
    return r;
}

template <class T>
ToeplitzReport is_admissible_impl(std::span<const T> f, std::span<const T> h) {
    ToeplitzReport r;
    for (std::size_t i = 1; i <= h.size(); ++i)
        if (!(h[i - 1] > T(0))) r.non_positive.push_back(i);
    for (std::size_t i = 1; i <= h.size(); ++i)
        for (std::size_t k = 1; i + k <= h.size() && k <= f.size(); ++k) {
            const T& a = h[i - 1];
            const T& b = h[i + k - 1];
            const T& fk = f[k - 1];
            if (abs_of(a - b) > fk || fk > a + b) r.violations.push_back({i, k});
        }
    r.ok = r.non_positive.empty() && r.violations.empty();
    return r;
}

}  // namespace detail

inline ToeplitzReport is_toeplitz(std::span<const Rational> f) {
    return detail::is_toeplitz_impl(f);
}
inline ToeplitzReport is_toeplitz(std::span<const std::int64_t> f) {
    return detail::is_toeplitz_impl(f);
}
inline ToeplitzReport is_toeplitz(const std::vector<Rational>& f) {
    return is_toeplitz(std::span<const Rational>(f));
}
inline ToeplitzReport is_toeplitz(const std::vector<std::int64_t>& f) {
    return is_toeplitz(std::span<const std::int64_t>(f));
}

// Violations report (i, k): the pair h(i), h(i+k) clashes with f(k).
inline ToeplitzReport is_admissible(std::span<const Rational> f, std::span<const Rational> h) {
    return detail::is_admissible_impl(f, h);
}
inline ToeplitzReport is_admissible(std::span<const std::int64_t> f,
                                    std::span<const std::int64_t> h) {
    return detail::is_admissible_impl(f, h);
}
inline ToeplitzReport is_admissible(const std::vector<Rational>& f,
                                    const std::vector<Rational>& h) {
    return is_admissible(std::span<const Rational>(f), std::span<const Rational>(h));
}
inline ToeplitzReport is_admissible(const std::vector<std::int64_t>& f,
                                    const std::vector<std::int64_t>& h) {
    return is_admissible(std::span<const std::int64_t>(f), std::span<const std::int64_t>(h));
}

// Bounds for a value appended at index n+1: the fragment (f, g) stays valid
// exactly when  max_k |f(k)-f(n-k+1)|  <=  g  <=  min_k (f(k)+f(n-k+1)).
// The lower bound never exceeds the upper one (amalgamation).
template <class T>
std::pair<T, T> amalgamation_bounds_t(std::span<const T> f) {
    if (f.empty()) throw domain_error("toeplitz/empty", "empty fragment has no bounds");
    const std::size_t n = f.size();
    T lower = detail::abs_of(f[0] - f[n - 1]);
    T upper = f[0] + f[n - 1];
    for (std::size_t k = 2; k <= n; ++k) {
        lower = std::max(lower, detail::abs_of(f[k - 1] - f[n - k]));
        upper = std::min(upper, f[k - 1] + f[n - k]);
    }
    return {lower, upper};
}

struct AmalgamationBounds {
    Rational lower, upper;  // M(F) and m(F)
};

inline AmalgamationBounds amalgamation_bounds(std::span<const Rational> f) {
    auto [lo, hi] = amalgamation_bounds_t(f);
    return {lo, hi};
}
inline AmalgamationBounds amalgamation_bounds(const std::vector<Rational>& f) {
    return amalgamation_bounds(std::span<const Rational>(f));
}
inline std::pair<std::int64_t, std::int64_t> amalgamation_bounds_ints(
    std::span<const std::int64_t> f) {
    return amalgamation_bounds_t(f);
}

// ------------------------------------------------------------------
// One simultaneous step: append g1 to the fragment, prepend gN to the
// admissible vector.  Integer mode.
// ------------------------------------------------------------------

struct IntInterval {
    std::int64_t lo = 0, hi = -1;
    bool empty() const { return lo > hi; }
    IntInterval meet(IntInterval o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
    std::int64_t mid() const { return lo + (hi - lo) / 2; }  // rounded down
    std::string str() const { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }
};

struct ExtensionStep {
    std::int64_t g1;  // new last value of the fragment
    std::int64_t gN;  // new first value of the vector
    std::int64_t d;   // max over fragment and vector entries
};

// Solves the linear system for (g1, gN):
//   (1) g1 within the amalgamation bounds of f,
//   (2) max|f(i)-h(i)| <= gN <= min(f(i)+h(i)),
//   (3) |g1-gN| <= h(n) <= g1+gN,
//   (4) both within clamp (intersected with [2, d-1]).
// g1 is the rounded-down midpoint of its feasible set after accounting for
// (2)-(4), gN the midpoint of the induced interval, so the step is feasible
// iff any integer pair solves the system.
inline ExtensionStep extend_one(std::span<const std::int64_t> f,
                                std::span<const std::int64_t> h,
                                std::optional<IntInterval> clamp = std::nullopt) {
    if (f.size() != h.size() || f.empty())
        throw domain_error("extend-one/length", "fragment and vector must have equal positive length");
    if (!is_admissible(f, h).ok)
        throw domain_error("extend-one/admissible", "vector is not admissible for the fragment");
    const std::size_t n = f.size();
    std::int64_t d = 0;
    for (auto v : f) d = std::max(d, v);
    for (auto v : h) d = std::max(d, v);

    IntInterval eff{2, d - 1};
    if (clamp) eff = eff.meet(*clamp);

    auto [alo, ahi] = amalgamation_bounds_ints(f);
    IntInterval i1{alo, ahi};
    std::int64_t plo = 0, phi = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < n; ++i) {
        plo = std::max(plo, detail::abs_of(f[i] - h[i]));
        phi = std::min(phi, f[i] + h[i]);
    }
    IntInterval i2{plo, phi};
    const std::int64_t hn = h[n - 1];

    auto fail = [&](const char* which) -> Error {
        return domain_error("extend-one/infeasible",
                            std::string("no integer solution within clamp (") + which + ")",
                            {{"interval_g1", i1.str()},
                             {"interval_gN", i2.str()},
                             {"pair_bound", "|g1-gN| <= " + std::to_string(hn) + " <= g1+gN"},
                             {"clamp", eff.str()}});
    };

    // Feasible g1 values: those for which the induced gN interval is
    // non-empty.  The induced interval is i2 meet [|g1-hn|, g1+hn] meet eff.
    IntInterval g1_box = i1.meet(eff);
    IntInterval i2e = i2.meet(eff);
    if (g1_box.empty() || i2e.empty()) throw fail("base intervals");
    // i2e non-empty: g1 needs  g1+hn >= i2e.lo  and  |g1-hn| <= i2e.hi.
    IntInterval coupling{std::max(i2e.lo - hn, hn - i2e.hi), hn + i2e.hi};
    IntInterval g1_all = g1_box.meet(coupling);
    if (g1_all.empty()) throw fail("coupling");
    std::int64_t g1 = g1_all.mid();
    IntInterval gN_all = i2e.meet({detail::abs_of(g1 - hn), g1 + hn});
    if (gN_all.empty()) throw fail("induced");
    return {g1, gN_all.mid(), d};
}

// ------------------------------------------------------------------
// Scaling rationals to integer mode
// ------------------------------------------------------------------

struct ScaledPair {
    std::vector<std::int64_t> f, h;
    std::int64_t factor;
};

// Multiplies by the lcm of all denominators, and by a further factor 3 when
// the resulting max value is below 3 (keeps the clamp [2, d-1] inhabited;
// odd multipliers preserve odd parity of d).
inline ScaledPair scale_to_integer(std::span<const Rational> f, std::span<const Rational> h) {
    std::int64_t l = 1;
    for (const auto& v : f) l = lcm_i64(l, v.denominator());
    for (const auto& v : h) l = lcm_i64(l, v.denominator());
    auto scale_all = [](std::span<const Rational> src, std::int64_t s) {
        std::vector<std::int64_t> out;
        out.reserve(src.size());
        for (const auto& v : src) {
            Rational scaled = v * Rational(s);
            out.push_back(scaled.numerator());  // denominator is 1 by construction
        }
        return out;
    };
    std::int64_t d = 0;
    for (const auto& v : f) d = std::max(d, (v * Rational(l)).numerator());
    for (const auto& v : h) d = std::max(d, (v * Rational(l)).numerator());
    if (d < 3) l *= 3;
    return {scale_all(f, l), scale_all(h, l), l};
}

// ------------------------------------------------------------------
// Slot-filling search, shared by the prolongation fallback and the compact
// prolongation.  seq holds the committed fragment, a run of open slots and
// the fixed tail; slots are filled left to right, each value drawn from the
// exact feasible interval at its position (all split pairs plus cuts against
// the fixed tail).
// ------------------------------------------------------------------

namespace detail {

enum class FillOutcome { filled, exhausted, budget };

// Feasible interval at 1-based position s given seq[0..s-2] assigned.
inline IntInterval position_interval(const std::vector<std::int64_t>& seq, std::size_t s) {
    IntInterval iv{1, std::numeric_limits<std::int64_t>::max()};
    for (std::size_t i = 1; 2 * i <= s; ++i) {
        std::int64_t a = seq[i - 1], b = seq[s - i - 1];
        iv.lo = std::max(iv.lo, abs_of(a - b));
        iv.hi = std::min(iv.hi, a + b);
    }
    return iv;
}

struct FillParams {
    std::size_t slot_begin = 0, slot_end = 0;  // 0-based range of open slots in seq
    std::int64_t cap = 1;                      // values drawn from [1, cap]
    std::vector<std::int64_t> steer;           // per-slot preferred value; empty = smallest-first
    std::size_t budget = 1'000'000;
};

inline FillOutcome fill_slots_rec(std::vector<std::int64_t>& seq, std::size_t slot,
                                  const FillParams& p, std::size_t& budget) {
    if (slot == p.slot_end) {
        // All slots assigned: verify the fixed tail positions.
        for (std::size_t s = p.slot_end + 1; s <= seq.size(); ++s) {
            IntInterval iv = position_interval(seq, s);
            if (seq[s - 1] < iv.lo || seq[s - 1] > iv.hi) return FillOutcome::exhausted;
        }
        return FillOutcome::filled;
    }
    if (budget == 0) return FillOutcome::budget;
    --budget;

    const std::size_t s = slot + 1;  // 1-based position
    IntInterval iv = position_interval(seq, s);
    iv = iv.meet({1, p.cap});
    // Cuts against the fixed tail: a tail value t at position st with an
    // already-known partner at gap st-s constrains this slot to
    // [|partner-t|, partner+t].
    for (std::size_t st = p.slot_end + 1; st <= seq.size() && !iv.empty(); ++st) {
        std::size_t gap = st - s;
        if (gap >= 1 && gap <= s - 1) {
            std::int64_t partner = seq[gap - 1];
            std::int64_t t = seq[st - 1];
            iv = iv.meet({abs_of(partner - t), partner + t});
        }
    }
    if (iv.empty()) return FillOutcome::exhausted;

    std::vector<std::int64_t> order;
    order.reserve(static_cast<std::size_t>(iv.hi - iv.lo + 1));
    if (!p.steer.empty()) {
        std::int64_t t = std::clamp(p.steer[slot - p.slot_begin], iv.lo, iv.hi);
        order.push_back(t);
        for (std::int64_t off = 1; t - off >= iv.lo || t + off <= iv.hi; ++off) {
            if (t - off >= iv.lo) order.push_back(t - off);
            if (t + off <= iv.hi) order.push_back(t + off);
        }
    } else {
        for (std::int64_t v = iv.lo; v <= iv.hi; ++v) order.push_back(v);
    }

    bool exhausted_budget = false;
    for (std::int64_t v : order) {
        seq[slot] = v;
        FillOutcome out = fill_slots_rec(seq, slot + 1, p, budget);
        if (out == FillOutcome::filled) return out;
        if (out == FillOutcome::budget) { exhausted_budget = true; break; }
    }
    seq[slot] = 0;
    return exhausted_budget ? FillOutcome::budget : FillOutcome::exhausted;
}

inline FillOutcome fill_slots(std::vector<std::int64_t>& seq, const FillParams& p) {
    std::size_t budget = p.budget;
    return fill_slots_rec(seq, p.slot_begin, p, budget);
}

}  // namespace detail

// ------------------------------------------------------------------
// Prolongation: extend a fragment so that it terminates in a prescribed
// admissible vector.
// ------------------------------------------------------------------

struct ProlongOptions {
    std::size_t fallback_budget = 1'000'000;
};

struct ProlongResultInts {
    std::vector<std::int64_t> full;  // fragment ++ bridge ++ vector
    std::size_t m = 0;               // bridge length
    bool used_fallback = false;
};

namespace detail {

// The two-sided block scheme: m = n*d bridge values in d blocks of length n,
// outermost block pair first with clamp [k+1, d-k] at depth k.  With an even
// number of blocks the two innermost take the lower endpoint of the final
// width-2 clamp.  With an odd number the last block is constant: (d-1)/2 is
// tried first, then (d+1)/2 — the shrinking clamps themselves collapse to
// the singleton (d+1)/2, and the middle needs 2c >= d whenever a value d
// lands opposite the centre, so (d-1)/2 alone fails on many inputs.
// Returns the assembled sequence only if it validates.
inline std::optional<std::vector<std::int64_t>> prolong_scheme_ints(
    std::span<const std::int64_t> f, std::span<const std::int64_t> h) {
    const std::size_t n = f.size();
    std::int64_t d = 0;
    for (auto v : f) d = std::max(d, v);
    for (auto v : h) d = std::max(d, v);
    if (d < 3) return std::nullopt;  // clamp [2, d-1] uninhabited
    const std::size_t m = n * static_cast<std::size_t>(d);

    std::vector<std::int64_t> bridge(m, 0);
    std::vector<std::int64_t> fcur(f.begin(), f.end());
    std::deque<std::int64_t> hcur(h.begin(), h.end());
    std::size_t left = 0, right = m;  // bridge[left..right) unassigned
    std::size_t blocks_left = static_cast<std::size_t>(d);
    std::vector<std::int64_t> middle_candidates;

    for (std::int64_t depth = 1; blocks_left > 0; ++depth) {
        if (blocks_left == 1) {
            middle_candidates = {(d - 1) / 2, (d + 1) / 2};
            break;
        }
        if (blocks_left == 2 && d % 2 == 0) {
            middle_candidates = {d / 2};
            break;
        }
        IntInterval clamp{depth + 1, d - depth};
        for (std::size_t step = 0; step < n; ++step) {
            std::vector<std::int64_t> hvec(hcur.begin(), hcur.end());
            ExtensionStep es;
            try {
                es = extend_one(fcur, hvec, clamp);
            } catch (const Error&) {
                return std::nullopt;
            }
            fcur.push_back(es.g1);
            hcur.push_front(es.gN);
            bridge[left++] = es.g1;
            bridge[--right] = es.gN;
        }
        blocks_left -= 2;
    }

    for (std::int64_t c : middle_candidates) {
        for (std::size_t i = left; i < right; ++i) bridge[i] = c;
        std::vector<std::int64_t> full(f.begin(), f.end());
        full.insert(full.end(), bridge.begin(), bridge.end());
        full.insert(full.end(), h.begin(), h.end());
        if (is_toeplitz(full).ok) return full;
    }
    return std::nullopt;
}

}  // namespace detail

// Integer-mode prolongation with the bridge length fixed at n*d: the block
// scheme first, then a complete smallest-first search over the bridge slots.
inline ProlongResultInts prolong_ints(std::span<const std::int64_t> f,
                                      std::span<const std::int64_t> h,
                                      const ProlongOptions& opts = {}) {
    if (f.size() != h.size() || f.empty())
        throw domain_error("prolong/length", "fragment and vector must have equal positive length");
    if (!is_toeplitz(f).ok)
        throw domain_error("prolong/fragment", "fragment is not a valid distance fragment");
    if (!is_admissible(f, h).ok)
        throw domain_error("prolong/admissible", "vector is not admissible for the fragment");

    if (auto full = detail::prolong_scheme_ints(f, h)) {
        std::size_t m = full->size() - f.size() - h.size();
        return {std::move(*full), m, false};
    }

    std::int64_t d = 0;
    for (auto v : f) d = std::max(d, v);
    for (auto v : h) d = std::max(d, v);
    const std::size_t m = f.size() * static_cast<std::size_t>(d);
    std::vector<std::int64_t> seq(f.begin(), f.end());
    seq.resize(f.size() + m, 0);
    seq.insert(seq.end(), h.begin(), h.end());
    detail::FillParams p;
    p.slot_begin = f.size();
    p.slot_end = f.size() + m;
    p.cap = d;
    p.budget = opts.fallback_budget;
    auto out = detail::fill_slots(seq, p);
    if (out == detail::FillOutcome::filled) return {std::move(seq), m, true};
    if (out == detail::FillOutcome::budget)
        throw domain_error("prolong/budget", "fallback search exhausted its budget");
    throw domain_error("prolong/infeasible", "no bridge of length n*d exists (unexpected)");
}

struct ProlongResult {
    std::vector<Rational> values;
    std::size_t m = 0;
    bool used_fallback = false;
    std::int64_t factor = 1;  // integer scaling applied to rational input
};

// Rational entry point.  Integer-valued input runs unscaled; otherwise the
// pair is scaled to integers and the result divided back.
inline ProlongResult prolong(std::span<const Rational> f, std::span<const Rational> h,
                             const ProlongOptions& opts = {}) {
    bool integral = true;
    for (const auto& v : f) integral = integral && v.is_integer();
    for (const auto& v : h) integral = integral && v.is_integer();

    std::vector<std::int64_t> fi, hi;
    std::int64_t factor = 1;
    if (integral) {
        for (const auto& v : f) fi.push_back(v.numerator());
        for (const auto& v : h) hi.push_back(v.numerator());
    } else {
        auto scaled = scale_to_integer(f, h);
        fi = std::move(scaled.f);
        hi = std::move(scaled.h);
        factor = scaled.factor;
    }
    ProlongResultInts r = prolong_ints(fi, hi, opts);
    ProlongResult out;
    out.m = r.full.size() - f.size() - h.size();
    out.used_fallback = r.used_fallback;
    out.factor = factor;
    out.values.reserve(r.full.size());
    for (auto v : r.full) out.values.push_back(Rational(v, factor));
    return out;
}

inline ProlongResult prolong(const std::vector<Rational>& f, const std::vector<Rational>& h,
                             const ProlongOptions& opts = {}) {
    return prolong(std::span<const Rational>(f), std::span<const Rational>(h), opts);
}

// ------------------------------------------------------------------
// Compact prolongation: shortest bridge found by escalating m.  Keeps chained
// prolongations at desk scale; the n*d scheme multiplies the fragment length
// by d+1 per call, which is unusable after a handful of iterations.
// ------------------------------------------------------------------

struct CompactOptions {
    std::size_t max_m = 96;
    std::size_t budget_per_m = 50'000;
};

inline std::optional<ProlongResultInts> prolong_compact_ints(
    std::span<const std::int64_t> f, std::span<const std::int64_t> h,
    const CompactOptions& opts = {}) {
    if (f.empty() || h.empty()) return std::nullopt;
    if (!is_toeplitz(f).ok || !is_admissible(f, h).ok) return std::nullopt;
    std::int64_t d = 0;
    for (auto v : f) d = std::max(d, v);
    for (auto v : h) d = std::max(d, v);
    const std::int64_t fend = f.back();
    const std::int64_t h1 = h.front();

    for (std::size_t m = 1; m <= opts.max_m; ++m) {
        std::vector<std::int64_t> seq(f.begin(), f.end());
        seq.resize(f.size() + m, 0);
        seq.insert(seq.end(), h.begin(), h.end());
        detail::FillParams p;
        p.slot_begin = f.size();
        p.slot_end = f.size() + m;
        p.cap = d;
        p.budget = opts.budget_per_m;
        p.steer.resize(m);
        for (std::size_t k = 0; k < m; ++k)
            p.steer[k] = fend + (h1 - fend) * static_cast<std::int64_t>(k + 1) /
                                    static_cast<std::int64_t>(m + 1);
        if (detail::fill_slots(seq, p) == detail::FillOutcome::filled)
            return ProlongResultInts{std::move(seq), m, false};
    }
    return std::nullopt;
}

// ------------------------------------------------------------------
// Universal fragments: process an enumeration of integer vectors, realizing
// each admissible one as a terminal window via the compact prolongation.
// ------------------------------------------------------------------

// All finite positive integer vectors, grouped by C = max(max entry, length)
// and ordered inside a group by (max entry, length, lexicographic).  Ordering
// by (max entry, length, lex) alone never leaves the all-ones vectors, so the
// finite grouping is what makes the stream exhaustive.
class VectorEnumeration {
public:
    std::vector<std::int64_t> next() {
        for (;;) {
            if (!pending_.empty()) {
                auto v = std::move(pending_.front());
                pending_.erase(pending_.begin());
                return v;
            }
            ++block_;
            fill_block();
        }
    }

private:
    void fill_block() {
        const std::int64_t C = block_;
        for (std::int64_t maxv = 1; maxv <= C; ++maxv) {
            if (maxv < C) {
                emit_all(maxv, static_cast<std::size_t>(C));
            } else {
                for (std::size_t len = 1; len <= static_cast<std::size_t>(C); ++len)
                    emit_all(maxv, len);
            }
        }
    }

    // All vectors of the given length over [1, maxv] whose max entry is
    // exactly maxv, in lexicographic order.
    void emit_all(std::int64_t maxv, std::size_t len) {
        std::vector<std::int64_t> v(len, 1);
        for (;;) {
            if (std::find(v.begin(), v.end(), maxv) != v.end()) pending_.push_back(v);
            std::size_t i = len;
            while (i > 0 && v[i - 1] == maxv) { v[i - 1] = 1; --i; }
            if (i == 0) break;
            ++v[i - 1];
        }
    }

    std::int64_t block_ = 0;
    std::vector<std::vector<std::int64_t>> pending_;
};

struct RealizationEntry {
    std::vector<std::int64_t> vec;
    std::size_t offset;  // f(offset + i) = vec[i], 1-based i
};

struct UniversalResult {
    std::vector<Rational> prefix;
    std::vector<RealizationEntry> table;
    std::vector<std::vector<std::int64_t>> skipped;  // inadmissible when reached
};

inline UniversalResult universal_prefix(std::size_t steps,
                                        std::vector<Rational> f0 = {Rational(1)},
                                        const CompactOptions& opts = {}) {
    if (f0.empty() || !is_toeplitz(f0).ok)
        throw domain_error("universal/seed", "seed fragment must be a valid distance fragment");
    UniversalResult result;
    result.prefix = std::move(f0);
    VectorEnumeration stream;
    std::size_t processed = 0;
    while (processed < steps) {
        std::vector<std::int64_t> vec = stream.next();
        std::vector<Rational> hr;
        hr.reserve(vec.size());
        for (auto v : vec) hr.emplace_back(v);
        if (!is_admissible(result.prefix, hr).ok) {
            result.skipped.push_back(std::move(vec));
            continue;
        }
        auto scaled = scale_to_integer(result.prefix, hr);
        auto compact = prolong_compact_ints(scaled.f, scaled.h, opts);
        if (!compact)
            throw domain_error("universal/bridge", "compact prolongation failed within budget",
                               {{"step", std::to_string(processed)}});
        const std::size_t old_len = result.prefix.size();
        result.prefix.clear();
        result.prefix.reserve(compact->full.size());
        for (auto v : compact->full) result.prefix.push_back(Rational(v, scaled.factor));
        result.table.push_back({std::move(vec), old_len + compact->m});
        ++processed;
    }
    return result;
}

// Smallest offset at which the vector appears as a window of the fragment,
// in either orientation: forward means f(N+i) = h(i), reversed means the
// window spells h backwards.
struct WindowMatch {
    std::size_t offset;
    bool reversed;
};

inline std::optional<WindowMatch> verify_window_realization(std::span<const Rational> f,
                                                            std::span<const Rational> h) {
    if (h.empty() || h.size() > f.size()) return std::nullopt;
    const std::size_t k = h.size();
    for (std::size_t off = 0; off + k <= f.size(); ++off) {
        bool fwd = true, rev = true;
        for (std::size_t i = 0; i < k && (fwd || rev); ++i) {
            if (f[off + i] != h[i]) fwd = false;
            if (f[off + i] != h[k - 1 - i]) rev = false;
        }
        if (fwd) return WindowMatch{off, false};
        if (rev) return WindowMatch{off, true};
    }
    return std::nullopt;
}

inline std::optional<WindowMatch> verify_window_realization(const std::vector<Rational>& f,
                                                            const std::vector<Rational>& h) {
    return verify_window_realization(std::span<const Rational>(f),
                                     std::span<const Rational>(h));
}

// ------------------------------------------------------------------
// The induced cyclic metric and the conjugacy invariant.
// ------------------------------------------------------------------

// Metric on points {0,...,size} with d(i,j) = f(|i-j|).  The unit shift
// restricted to {0,...,size-1} is verified to be distance preserving.
inline FiniteMetricSpace cyclic_metric(std::span<const Rational> f, std::size_t size) {
    if (size > f.size())
        throw domain_error("cyclic/size", "size exceeds fragment length",
                           {{"size", std::to_string(size)},
                            {"fragment", std::to_string(f.size())}});
    std::vector<std::string> names;
    std::vector<std::vector<Rational>> dist(size + 1, std::vector<Rational>(size + 1));
    for (std::size_t i = 0; i <= size; ++i) {
        names.push_back(std::to_string(i));
        for (std::size_t j = 0; j <= size; ++j)
            dist[i][j] = (i == j) ? Rational(0) : f[(i > j ? i - j : j - i) - 1];
    }
    auto space = FiniteMetricSpace::from_matrix(std::move(names), std::move(dist));
    for (std::size_t i = 0; i + 1 < size; ++i)
        for (std::size_t j = i + 1; j + 1 <= size; ++j)
            if (space.dist(i, j) != space.dist(i + 1, j + 1))
                throw domain_error("cyclic/shift", "unit shift failed distance preservation");
    return space;
}

inline FiniteMetricSpace cyclic_metric(const std::vector<Rational>& f, std::size_t size) {
    return cyclic_metric(std::span<const Rational>(f), size);
}

// Two cyclic isometries are conjugate only if their displacement fragments
// agree; a differing index is a non-conjugacy certificate at that scale.
struct ConjugacyCertificate {
    bool distinguishable = false;
    std::size_t first_difference = 0;  // 1-based, valid when distinguishable
    std::size_t compared_length = 0;
};

inline ConjugacyCertificate conjugacy_compare(std::span<const Rational> f,
                                              std::span<const Rational> g) {
    ConjugacyCertificate c;
    c.compared_length = std::min(f.size(), g.size());
    for (std::size_t i = 0; i < c.compared_length; ++i)
        if (f[i] != g[i]) {
            c.distinguishable = true;
            c.first_difference = i + 1;
            break;
        }
    return c;
}

}  // namespace forge
