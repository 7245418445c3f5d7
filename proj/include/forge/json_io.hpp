#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "forge/errors.hpp"
#include "forge/extension.hpp"
#include "forge/group2.hpp"
#include "forge/isometry.hpp"
#include "forge/metric_space.hpp"
#include "forge/oracle.hpp"
#include "forge/orbit_graph.hpp"
#include "forge/rational.hpp"
#include "forge/toeplitz.hpp"

// Wire formats.  Rationals travel as canonical "p/q" strings ("p" when the
// denominator is 1); exact integers are also accepted on input, floating
// point never is.

namespace forge {

using nlohmann::json;

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    throw parse_error("json/rational", "expected \"p/q\" string or integer");
}

inline json space_to_json(const FiniteMetricSpace& m) {
    json points = json::array();
    for (const auto& n : m.names()) points.push_back(n);
    json dist = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.dist(i, j).str());
        dist.push_back(std::move(row));
    }
    return json{{"points", std::move(points)}, {"dist", std::move(dist)}};
}

inline FiniteMetricSpace space_from_json(const json& j) {
    if (!j.contains("points") || !j.contains("dist"))
        throw parse_error("json/space", "expected {\"points\", \"dist\"}");
    std::vector<std::string> names;
    for (const auto& p : j.at("points")) names.push_back(p.get<std::string>());
    std::vector<std::vector<Rational>> dist;
    for (const auto& row : j.at("dist")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rational_from_json(v));
        dist.push_back(std::move(r));
    }
    return FiniteMetricSpace::from_matrix(std::move(names), std::move(dist));
}

inline json spec_to_json(const DistanceSpec& s) {
    json targets = json::object();
    for (const auto& [p, g] : s.targets) targets[std::to_string(p)] = g.str();
    return json{{"targets", std::move(targets)}};
}

inline DistanceSpec spec_from_json(const json& j) {
    const json& targets = j.contains("targets") ? j.at("targets") : j;
    if (!targets.is_object()) throw parse_error("json/spec", "expected a targets object");
    std::vector<std::pair<PointId, Rational>> t;
    for (const auto& [key, value] : targets.items()) {
        std::size_t pos = 0;
        unsigned long id = std::stoul(key, &pos);
        if (pos != key.size()) throw parse_error("json/spec", "point key must be an id");
        t.emplace_back(static_cast<PointId>(id), rational_from_json(value));
    }
    return DistanceSpec::of(std::move(t));
}

inline json growing_to_json(const GrowingSpace& gs) {
    json out = space_to_json(gs.space());
    json log = json::array();
    for (const auto& entry : gs.log()) {
        json e = spec_to_json(entry.spec);
        e["new"] = entry.new_point;
        log.push_back(std::move(e));
    }
    out["log"] = std::move(log);
    return out;
}

// With a log present the space is rebuilt by replay (and checked against the
// serialized matrix when one is given); otherwise the matrix is imported as
// a sequence of full-target extensions.
inline GrowingSpace growing_from_json(const json& j) {
    if (j.contains("log")) {
        GrowingSpace gs;
        for (const auto& e : j.at("log")) extend_point(gs, spec_from_json(e));
        if (j.contains("dist")) {
            FiniteMetricSpace given = space_from_json(j);
            if (given.size() != gs.size())
                throw parse_error("json/log", "log replay disagrees with matrix size");
            for (PointId a = 0; a < given.size(); ++a)
                for (PointId b = 0; b < given.size(); ++b)
                    if (given.dist(a, b) != gs.space().dist(a, b))
                        throw parse_error("json/log", "log replay disagrees with matrix");
            gs.rename(given.names());
        }
        return gs;
    }
    return import_space(space_from_json(j));
}

inline json prefix_to_json(const std::vector<Rational>& values) {
    bool integral = true;
    for (const auto& v : values) integral = integral && v.is_integer();
    json vals = json::array();
    for (const auto& v : values) vals.push_back(v.str());
    return json{{"mode", integral ? "int" : "rat"}, {"values", std::move(vals)}};
}

inline std::vector<Rational> prefix_from_json(const json& j) {
    const json& vals = j.contains("values") ? j.at("values") : j;
    if (!vals.is_array()) throw parse_error("json/prefix", "expected a values array");
    std::vector<Rational> out;
    for (const auto& v : vals) out.push_back(rational_from_json(v));
    if (j.contains("mode") && j.at("mode") == "int")
        for (const auto& v : out)
            if (!v.is_integer()) throw parse_error("json/prefix", "int mode requires integers");
    return out;
}

inline json invariant_to_json(const InvariantMetric& m) {
    json delta = json::array();
    for (std::size_t x = 1; x < m.order(); ++x) delta.push_back(m.delta[x].str());
    return json{{"level", m.level}, {"delta", std::move(delta)}};
}

inline InvariantMetric invariant_from_json(const json& j) {
    InvariantMetric m;
    m.level = j.at("level").get<std::size_t>();
    const auto& delta = j.at("delta");
    if (delta.size() + 1 != (std::size_t(1) << m.level))
        throw parse_error("json/invariant", "delta must list all non-identity elements");
    m.delta.resize(std::size_t(1) << m.level);
    for (std::size_t x = 1; x < m.order(); ++x)
        m.delta[x] = rational_from_json(delta[x - 1]);
    return m;
}

inline json partition_to_json(const IntervalPartition& p) {
    json bps = json::array();
    for (const auto& b : p.breakpoints()) bps.push_back(b.str());
    json cells = json::array();
    for (std::size_t n = 1; n < p.breakpoints().size(); ++n)
        cells.push_back(n % 2 == 1 ? "E" : "N");
    return json{{"breakpoints", std::move(bps)}, {"cells", std::move(cells)}};
}

inline std::string graph_to_dot(const Graph& g, const FiniteMetricSpace* space = nullptr) {
    std::string out = "graph {\n";
    for (PointId v = 0; v < g.vertices; ++v) {
        out += "  n" + std::to_string(v);
        if (space) out += " [label=\"" + space->name(v) + "\"]";
        out += ";\n";
    }
    for (const auto& [a, b] : g.edges)
        out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

inline std::string graph_to_edge_csv(const Graph& g) {
    std::string out = "a,b\n";
    for (const auto& [a, b] : g.edges)
        out += std::to_string(a) + "," + std::to_string(b) + "\n";
    return out;
}

// Realization table CSV: the vector as space-separated integers, then the
// offset at which it is realized.
inline std::string realization_table_to_csv(const std::vector<RealizationEntry>& table) {
    std::string out = "vector,offset\n";
    for (const auto& e : table) {
        std::string v;
        for (std::size_t i = 0; i < e.vec.size(); ++i)
            v += (i ? " " : "") + std::to_string(e.vec[i]);
        out += v + "," + std::to_string(e.offset) + "\n";
    }
    return out;
}

inline json certificate_to_json(const UnboundednessCertificate& c) {
    return json{{"kind", "unbounded"},
                {"stage", c.stage},
                {"point", c.point},
                {"displacement", c.displacement.str()}};
}

inline json certificate_to_json(const WordCertificate& c) {
    return json{{"kind", "word"},
                {"word", c.word},
                {"revisit", c.revisit},
                {"point", c.base},
                {"end", c.end},
                {"displacement", c.displacement.str()}};
}

inline json certificate_to_json(const FreenessCertificate& c) {
    return json{{"kind", "freeness"},
                {"word", c.word},
                {"displacement", c.displacement.str()},
                {"corrector_sum", c.corrector_sum.str()},
                {"exceeds", c.exceeds}};
}

inline json report_to_json(const MetricReport& r) {
    json viol = json::array();
    for (const auto& v : r.violations)
        viol.push_back(json{{"i", v.i},
                            {"j", v.j},
                            {"k", v.k},
                            {"d(i,k)", v.lhs.str()},
                            {"d(i,j)+d(j,k)", v.rhs.str()}});
    return json{{"ok", r.ok}, {"structural", r.structural}, {"violations", std::move(viol)}};
}

inline json report_to_json(const SpecReport& r) {
    json viol = json::array();
    for (const auto& v : r.violations) {
        if (v.kind == SpecViolation::Kind::non_positive)
            viol.push_back(json{{"kind", "non-positive"}, {"point", v.a}, {"g", v.ga.str()}});
        else
            viol.push_back(json{{"kind", "pair"},
                                {"a", v.a},
                                {"b", v.b},
                                {"g(a)", v.ga.str()},
                                {"g(b)", v.gb.str()},
                                {"d(a,b)", v.d.str()}});
    }
    return json{{"ok", r.ok}, {"violations", std::move(viol)}};
}

inline json report_to_json(const OracleReport& r) {
    return json{{"suite", r.suite},
                {"pass", r.pass},
                {"cases", r.cases},
                {"notes", r.notes},
                {"counterexample", r.counterexample}};
}

inline json error_to_json(const Error& e) {
    json ctx = json::object();
    for (const auto& [k, v] : e.context()) ctx[k] = v;
    return json{{"code", e.code()}, {"message", e.what()}, {"context", std::move(ctx)}};
}

inline json expo3_to_json(const Exponent3Report& r) {
    return json{{"alpha", r.alpha.str()},
                {"eps", r.eps.str()},
                {"side_long_min", r.side_long_min.str()},
                {"side_short_max", r.side_short_max.str()},
                {"violation", r.violation.str()},
                {"contradiction_forced", r.contradiction_forced},
                {"identities", r.identities}};
}

inline std::string experiment_to_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "size,pairs,with_witness,fraction\n";
    for (const auto& r : rows)
        out += std::to_string(r.size) + "," + std::to_string(r.pairs_checked) + "," +
               std::to_string(r.with_witness) + "," + r.fraction().str() + "\n";
    return out;
}

}  // namespace forge
