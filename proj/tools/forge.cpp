// forge: build finite pieces of the rational universal metric space and the
// isometry constructions on top of it.  All distances are exact rationals;
// every sampled artifact is reproducible from its seed.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forge/forge.hpp"
#include "forge/json_io.hpp"

using namespace forge;

namespace {

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << "\n";
            return;
        }
        std::ofstream f(path);
        if (!f) throw parse_error("io/write", "cannot open output file: " + path);
        f << text;
    }

    void write(const json& j) const { write(j.dump(2)); }
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("io/read", "cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("json/syntax", "invalid JSON");
    return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !parts.empty()) parts.push_back(cur);
    return parts;
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& p : split(s, ',')) out.push_back(Rational::parse(p));
    return out;
}

std::vector<PointId> parse_ids(const std::string& s) {
    std::vector<PointId> out;
    if (s.empty()) return out;
    for (const auto& p : split(s, ',')) {
        std::size_t pos = 0;
        unsigned long v = std::stoul(p, &pos);
        if (pos != p.size()) throw parse_error("cli/ids", "invalid point id: " + p);
        out.push_back(static_cast<PointId>(v));
    }
    return out;
}

// "int:D", "rat:D:Q", "graph"
ValueDomain parse_domain(const std::string& s) {
    auto parts = split(s, ':');
    if (parts[0] == "int" && parts.size() == 2)
        return ValueDomain::integers(std::stoll(parts[1]));
    if (parts[0] == "rat" && parts.size() == 3)
        return ValueDomain::rationals(std::stoll(parts[1]), std::stoll(parts[2]));
    if (parts[0] == "graph" && parts.size() == 1) return ValueDomain::graph();
    throw parse_error("cli/domain", "expected int:D, rat:D:Q or graph, got: " + s);
}

// "harmonic", "harmonic-from:K", "const:p/q", "blocked"
SeriesSpec parse_series(const std::string& s) {
    auto parts = split(s, ':');
    SeriesSpec spec;
    if (parts[0] == "harmonic" && parts.size() == 1) return spec;
    if (parts[0] == "blocked" && parts.size() == 1) return SeriesSpec::blocked();
    if (parts[0] == "harmonic-from" && parts.size() == 2) {
        spec.kind = SeriesSpec::Kind::harmonic_from;
        spec.start = std::stoll(parts[1]);
        return spec;
    }
    if (parts[0] == "const" && parts.size() == 2) {
        spec.kind = SeriesSpec::Kind::constant_then_harmonic;
        spec.first_length = Rational::parse(parts[1]);
        return spec;
    }
    throw parse_error("cli/series", "expected harmonic, blocked, harmonic-from:K or const:p/q");
}

std::string cert_lines(const std::vector<json>& certs) {
    std::string out;
    for (const auto& c : certs) out += c.dump() + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite stages of the rational universal metric space"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    Output out;
    std::string format = "json";
    app.add_option("--seed", seed, "seed for sampled constructions")->capture_default_str();
    app.add_option("--out", out.path, "output file (default stdout)");
    app.add_option("--format", format, "json|csv|dot")
        ->check(CLI::IsMember({"json", "csv", "dot"}));

    std::function<int()> action;

    // ---- validate ----
    {
        auto* cmd = app.add_subcommand("validate", "check the metric axioms of a space file");
        auto file = std::make_shared<std::string>();
        cmd->add_option("file", *file)->required();
        cmd->callback([&, file]() {
            action = [&, file]() {
                FiniteMetricSpace m = space_from_json(parse_json(read_file(*file)));
                MetricReport r = validate_metric(m);
                out.write(report_to_json(r));
                if (!r.ok) {
                    std::cerr << error_to_json(domain_error("validate/failed",
                                                            "space violates the metric axioms"))
                                     .dump()
                              << "\n";
                    return 2;
                }
                return 0;
            };
        });
    }

    // ---- extend ----
    {
        auto* cmd = app.add_subcommand("extend", "add a point with prescribed distances");
        auto file = std::make_shared<std::string>();
        auto spec_text = std::make_shared<std::string>();
        cmd->add_option("file", *file)->required();
        cmd->add_option("--spec", *spec_text, "JSON object of point id -> \"p/q\"")->required();
        cmd->callback([&, file, spec_text]() {
            action = [&, file, spec_text]() {
                GrowingSpace gs = growing_from_json(parse_json(read_file(*file)));
                extend_point(gs, spec_from_json(parse_json(*spec_text)));
                out.write(growing_to_json(gs));
                return 0;
            };
        });
    }

    // ---- generic ----
    {
        auto* cmd = app.add_subcommand("generic", "sample a space by random extensions");
        auto n = std::make_shared<std::size_t>(1);
        auto domain = std::make_shared<std::string>("int:5");
        cmd->add_option("--n", *n, "number of points")->required();
        cmd->add_option("--domain", *domain, "int:D, rat:D:Q or graph");
        cmd->callback([&, n, domain]() {
            action = [&, n, domain]() {
                GrowingSpace gs = generic_space(*n, parse_domain(*domain), seed);
                out.write(growing_to_json(gs));
                return 0;
            };
        });
    }

    // ---- toeplitz ----
    {
        auto* top = app.add_subcommand("toeplitz", "shift-invariant distance fragments");
        top->require_subcommand(1);
        auto fvals = std::make_shared<std::string>();
        auto hvals = std::make_shared<std::string>();

        auto* v = top->add_subcommand("validate", "check fragment conditions");
        v->add_option("--values", *fvals)->required();
        v->callback([&, fvals]() {
            action = [&, fvals]() {
                auto f = parse_rationals(*fvals);
                auto r = is_toeplitz(f);
                json viol = json::array();
                for (const auto& x : r.violations) viol.push_back(json{{"i", x.i}, {"j", x.j}});
                out.write(json{{"ok", r.ok},
                               {"non_positive", r.non_positive},
                               {"violations", std::move(viol)}});
                return r.ok ? 0 : 2;
            };
        });

        auto* e = top->add_subcommand("extend", "one simultaneous append/prepend step");
        e->set_help_flag("--help", "print help");  // frees -h for the vector option
        auto clamp_text = std::make_shared<std::string>();
        e->add_option("--f", *fvals)->required();
        e->add_option("--h", *hvals)->required();
        e->add_option("--clamp", *clamp_text, "lo,hi (intersected with [2, d-1])");
        e->callback([&, fvals, hvals, clamp_text]() {
            action = [&, fvals, hvals, clamp_text]() {
                auto fr = parse_rationals(*fvals);
                auto hr = parse_rationals(*hvals);
                std::vector<std::int64_t> f, h;
                for (const auto& x : fr) {
                    if (!x.is_integer())
                        throw domain_error("cli/int-mode", "extend runs in integer mode");
                    f.push_back(x.numerator());
                }
                for (const auto& x : hr) {
                    if (!x.is_integer())
                        throw domain_error("cli/int-mode", "extend runs in integer mode");
                    h.push_back(x.numerator());
                }
                std::optional<IntInterval> clamp;
                if (!clamp_text->empty()) {
                    auto parts = split(*clamp_text, ',');
                    if (parts.size() != 2)
                        throw parse_error("cli/clamp", "expected lo,hi");
                    clamp = IntInterval{std::stoll(parts[0]), std::stoll(parts[1])};
                }
                ExtensionStep step = extend_one(f, h, clamp);
                out.write(json{{"g1", step.g1}, {"gN", step.gN}, {"d", step.d}});
                return 0;
            };
        });

        auto* p = top->add_subcommand("prolong", "extend the fragment to end in the vector");
        p->set_help_flag("--help", "print help");
        p->add_option("--f", *fvals)->required();
        p->add_option("--h", *hvals)->required();
        p->callback([&, fvals, hvals]() {
            action = [&, fvals, hvals]() {
                ProlongResult r = prolong(parse_rationals(*fvals), parse_rationals(*hvals));
                json j = prefix_to_json(r.values);
                j["m"] = r.m;
                j["used_fallback"] = r.used_fallback;
                j["factor"] = r.factor;
                out.write(j);
                return 0;
            };
        });

        auto* u = top->add_subcommand("universal", "realize enumerated vectors as windows");
        auto steps = std::make_shared<std::size_t>(10);
        auto f0 = std::make_shared<std::string>("1");
        u->add_option("--steps", *steps, "number of vectors to realize")->required();
        u->add_option("--f0", *f0, "seed fragment");
        u->callback([&, steps, f0]() {
            action = [&, steps, f0]() {
                UniversalResult r = universal_prefix(*steps, parse_rationals(*f0));
                if (format == "csv") {
                    out.write(realization_table_to_csv(r.table));
                    return 0;
                }
                json table = json::array();
                for (const auto& t : r.table)
                    table.push_back(json{{"vector", t.vec}, {"offset", t.offset}});
                json j = json{{"prefix", prefix_to_json(r.prefix)},
                              {"table", std::move(table)},
                              {"skipped", r.skipped}};
                out.write(j);
                return 0;
            };
        });

        auto* c = top->add_subcommand("cyclic", "metric induced on {0..size}");
        auto size = std::make_shared<std::size_t>(0);
        c->add_option("--f", *fvals)->required();
        c->add_option("--size", *size)->required();
        c->callback([&, fvals, size]() {
            action = [&, fvals, size]() {
                FiniteMetricSpace m = cyclic_metric(parse_rationals(*fvals), *size);
                out.write(space_to_json(m));
                return 0;
            };
        });
    }

    // ---- iso ----
    {
        auto* top = app.add_subcommand("iso", "partial isometries of a growing space");
        top->require_subcommand(1);
        auto space_file = std::make_shared<std::string>();

        auto* ap = top->add_subcommand("approx", "realize an approximate tuple image");
        auto base = std::make_shared<std::string>();
        auto images = std::make_shared<std::string>();
        auto vn = std::make_shared<PointId>(0);
        auto anchor = std::make_shared<PointId>(0);
        auto eps = std::make_shared<std::string>("1");
        ap->add_option("--space", *space_file)->required();
        ap->add_option("--base", *base, "comma-separated ids");
        ap->add_option("--images", *images, "comma-separated ids");
        ap->add_option("--vn", *vn)->required();
        ap->add_option("--anchor", *anchor)->required();
        ap->add_option("--eps", *eps)->required();
        ap->callback([&, space_file, base, images, vn, anchor, eps]() {
            action = [&, space_file, base, images, vn, anchor, eps]() {
                GrowingSpace gs = growing_from_json(parse_json(read_file(*space_file)));
                PointId v = approximate_isometry(gs, parse_ids(*base), parse_ids(*images),
                                                 *vn, *anchor, Rational::parse(*eps));
                json j = growing_to_json(gs);
                j["point"] = v;
                out.write(j);
                return 0;
            };
        });

        auto* bd = top->add_subcommand("bounded", "extend a bounded partial isometry");
        auto pairs_text = std::make_shared<std::string>();
        auto k = std::make_shared<std::string>();
        auto u_point = std::make_shared<PointId>(0);
        bd->add_option("--space", *space_file)->required();
        bd->add_option("--pairs", *pairs_text, "a:b,c:d ...")->required();
        bd->add_option("--k", *k, "displacement bound")->required();
        bd->add_option("--u", *u_point)->required();
        bd->callback([&, space_file, pairs_text, k, u_point]() {
            action = [&, space_file, pairs_text, k, u_point]() {
                GrowingSpace gs = growing_from_json(parse_json(read_file(*space_file)));
                std::vector<std::pair<PointId, PointId>> pairs;
                for (const auto& p : split(*pairs_text, ',')) {
                    auto ab = split(p, ':');
                    if (ab.size() != 2) throw parse_error("cli/pairs", "expected a:b");
                    pairs.emplace_back(std::stoul(ab[0]), std::stoul(ab[1]));
                }
                PartialIsometry f =
                    PartialIsometry::create(gs.space(), pairs, Rational::parse(*k));
                auto ext = extend_bounded(gs, f, *u_point);
                json j = growing_to_json(gs);
                j["image"] = ext.image;
                j["displacement"] = gs.space().dist(*u_point, ext.image).str();
                out.write(j);
                return 0;
            };
        });

        auto* ub = top->add_subcommand("unbounded", "back-and-forth with escalating gadgets");
        auto stages = std::make_shared<std::size_t>(1);
        ub->add_option("--stages", *stages)->required();
        ub->add_option("--space", *space_file);
        ub->callback([&, stages, space_file]() {
            action = [&, stages, space_file]() {
                GrowingSpace gs;
                if (!space_file->empty())
                    gs = growing_from_json(parse_json(read_file(*space_file)));
                auto r = build_unbounded(gs, *stages);
                std::vector<json> lines;
                for (const auto& c : r.certificates) lines.push_back(certificate_to_json(c));
                out.write(cert_lines(lines));
                return 0;
            };
        });

        auto* fr = top->add_subcommand("free", "word displacement witnesses for a free pair");
        auto words_text = std::make_shared<std::string>("a,b");
        auto revisits = std::make_shared<std::size_t>(1);
        fr->add_option("--words", *words_text, "comma list; uppercase = inverse");
        fr->add_option("--revisits", *revisits);
        fr->add_option("--space", *space_file);
        fr->callback([&, words_text, revisits, space_file]() {
            action = [&, words_text, revisits, space_file]() {
                GrowingSpace gs;
                if (!space_file->empty())
                    gs = growing_from_json(parse_json(read_file(*space_file)));
                std::vector<FreeWord> words;
                for (const auto& w : split(*words_text, ',')) words.push_back(FreeWord::parse(w));
                auto r = build_free_pair(gs, words, *revisits);
                std::vector<json> lines;
                for (const auto& c : r.certificates) lines.push_back(certificate_to_json(c));
                out.write(cert_lines(lines));
                return 0;
            };
        });

        auto* df = top->add_subcommand("dense-free", "homogeneity with freeness witnesses");
        auto pairs_file = std::make_shared<std::string>();
        auto budget = std::make_shared<std::size_t>(4);
        df->add_option("--space", *space_file)->required();
        df->add_option("--pairs-file", *pairs_file,
                       "JSON [{\"alpha\":[ids],\"beta\":[ids]},...]")
            ->required();
        df->add_option("--word-budget", *budget);
        df->callback([&, space_file, pairs_file, budget]() {
            action = [&, space_file, pairs_file, budget]() {
                GrowingSpace gs = growing_from_json(parse_json(read_file(*space_file)));
                std::vector<TuplePair> pairs;
                for (const auto& p : parse_json(read_file(*pairs_file))) {
                    TuplePair tp;
                    for (const auto& a : p.at("alpha")) tp.alpha.push_back(a.get<PointId>());
                    for (const auto& b : p.at("beta")) tp.beta.push_back(b.get<PointId>());
                    pairs.push_back(std::move(tp));
                }
                auto r = compose_dense_free(gs, pairs, *budget);
                std::vector<json> lines;
                for (const auto& h : r.homogeneity)
                    lines.push_back(json{{"kind", "homogeneity"},
                                         {"pair", h.pair_index},
                                         {"image", h.image_of_alpha},
                                         {"exact", h.exact}});
                for (const auto& c : r.freeness) lines.push_back(certificate_to_json(c));
                out.write(cert_lines(lines));
                return 0;
            };
        });
    }

    // ---- group2 ----
    {
        auto* top = app.add_subcommand("group2", "invariant metrics on the boolean group");
        top->require_subcommand(1);

        auto* ex = top->add_subcommand("extend", "prescribe distances to the new generator");
        auto metric_file = std::make_shared<std::string>();
        auto nd = std::make_shared<std::string>();
        ex->add_option("--metric", *metric_file)->required();
        ex->add_option("--new", *nd, "distances to current elements, in mask order")->required();
        ex->callback([&, metric_file, nd]() {
            action = [&, metric_file, nd]() {
                InvariantMetric m = invariant_from_json(parse_json(read_file(*metric_file)));
                InvariantMetric next = extend_invariant_metric(m, parse_rationals(*nd));
                out.write(invariant_to_json(next));
                return 0;
            };
        });

        auto* ge = top->add_subcommand("generic", "sample an invariant metric");
        auto levels = std::make_shared<std::size_t>(1);
        auto domain = std::make_shared<std::string>("int:5");
        ge->add_option("--levels", *levels)->required();
        ge->add_option("--domain", *domain);
        ge->callback([&, levels, domain]() {
            action = [&, levels, domain]() {
                ValueDomain dom = parse_domain(*domain);
                InvariantMetric m = generic_invariant_metric(*levels, dom, seed);
                json j = invariant_to_json(m);
                ExtensionStats st = extension_property_stats(induced_space(m), dom);
                j["extension_stats"] = json{{"checked", st.checked},
                                            {"realized", st.realized},
                                            {"fraction", st.fraction().str()}};
                out.write(j);
                return 0;
            };
        });

        auto* xp = top->add_subcommand("expo3", "triangle obstruction for exponent 3");
        auto alpha = std::make_shared<std::string>();
        auto eps = std::make_shared<std::string>();
        xp->add_option("--alpha", *alpha)->required();
        xp->add_option("--eps", *eps)->required();
        xp->callback([&, alpha, eps]() {
            action = [&, alpha, eps]() {
                out.write(expo3_to_json(
                    exponent3_witness(Rational::parse(*alpha), Rational::parse(*eps))));
                return 0;
            };
        });
    }

    // ---- orbit ----
    {
        auto* top = app.add_subcommand("orbit", "interval partition and the induced graph");
        top->require_subcommand(1);
        // The partition command defaults to the plain harmonic series; the
        // space-driven commands default to the blocked series, whose exact
        // breakpoints can cover any diameter.
        auto part_series = std::make_shared<std::string>("harmonic");
        auto series_text = std::make_shared<std::string>("blocked");
        auto space_file = std::make_shared<std::string>();

        auto* pa = top->add_subcommand("partition", "breakpoints of the E/N partition");
        auto cover = std::make_shared<std::string>("2");
        pa->add_option("--series", *part_series);
        pa->add_option("--cover", *cover)->required();
        pa->callback([&, part_series, cover]() {
            action = [&, part_series, cover]() {
                IntervalPartition p =
                    build_partition(parse_series(*part_series), Rational::parse(*cover));
                out.write(partition_to_json(p));
                return 0;
            };
        });

        auto* gr = top->add_subcommand("graph", "edges where the distance lands in E");
        gr->add_option("--space", *space_file)->required();
        gr->add_option("--series", *series_text);
        gr->callback([&, space_file, series_text]() {
            action = [&, space_file, series_text]() {
                FiniteMetricSpace m = space_from_json(parse_json(read_file(*space_file)));
                IntervalPartition p(parse_series(*series_text), m.diameter() + Rational(1));
                Graph g = metric_to_graph(m, p);
                if (format == "dot") {
                    out.write(graph_to_dot(g, &m));
                } else if (format == "csv") {
                    out.write(graph_to_edge_csv(g));
                } else {
                    json edges = json::array();
                    for (const auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
                    out.write(json{{"vertices", g.vertices}, {"edges", std::move(edges)}});
                }
                return 0;
            };
        });

        auto* ec = top->add_subcommand("extend-check", "targeted witness extension");
        auto u_text = std::make_shared<std::string>();
        auto v_text = std::make_shared<std::string>();
        ec->add_option("--space", *space_file)->required();
        ec->add_option("--u", *u_text, "joined set");
        ec->add_option("--v", *v_text, "avoided set");
        ec->add_option("--series", *series_text);
        ec->callback([&, space_file, u_text, v_text, series_text]() {
            action = [&, space_file, u_text, v_text, series_text]() {
                FiniteMetricSpace m = space_from_json(parse_json(read_file(*space_file)));
                auto tw = targeted_witness_extension(m, parse_series(*series_text),
                                                     parse_ids(*u_text), parse_ids(*v_text));
                json j = space_to_json(tw.extended);
                j["witness"] = tw.witness;
                j["e_cell"] = tw.e_cell;
                j["n_cell"] = tw.n_cell;
                out.write(j);
                return 0;
            };
        });

        auto* xp = top->add_subcommand("experiment", "witness fractions over growing spaces");
        auto sizes_text = std::make_shared<std::string>("4,8,12");
        auto uv_bound = std::make_shared<std::size_t>(2);
        auto domain = std::make_shared<std::string>("int:5");
        xp->add_option("--sizes", *sizes_text);
        xp->add_option("--uv-bound", *uv_bound);
        xp->add_option("--domain", *domain);
        xp->add_option("--series", *series_text);
        xp->callback([&, sizes_text, uv_bound, domain, series_text]() {
            action = [&, sizes_text, uv_bound, domain, series_text]() {
                std::vector<std::size_t> sizes;
                for (const auto& s : split(*sizes_text, ',')) sizes.push_back(std::stoul(s));
                auto rows = orbit_graph_experiment(sizes, parse_domain(*domain), seed,
                                                   *uv_bound, parse_series(*series_text));
                if (format == "csv") {
                    out.write(experiment_to_csv(rows));
                } else {
                    json j = json::array();
                    for (const auto& r : rows)
                        j.push_back(json{{"size", r.size},
                                         {"pairs", r.pairs_checked},
                                         {"with_witness", r.with_witness},
                                         {"fraction", r.fraction().str()}});
                    out.write(j);
                }
                return 0;
            };
        });
    }

    // ---- oracle ----
    {
        auto* cmd = app.add_subcommand("oracle", "exhaustive and brute-force check suites");
        auto suite = std::make_shared<std::string>();
        auto points = std::make_shared<std::size_t>(4);
        auto max_value = std::make_shared<std::int64_t>(4);
        auto max_n = std::make_shared<std::size_t>(6);
        auto bound = std::make_shared<std::int64_t>(4);
        auto levels = std::make_shared<std::size_t>(4);
        auto spaces = std::make_shared<std::size_t>(50);
        auto uv_bound = std::make_shared<std::size_t>(3);
        cmd->add_option("suite", *suite)
            ->required()
            ->check(CLI::IsMember({"metric", "toeplitz", "isometry", "group2", "orbit"}));
        cmd->add_option("--points", *points);
        cmd->add_option("--max", *max_value);
        cmd->add_option("--n", *max_n);
        cmd->add_option("--bound", *bound);
        cmd->add_option("--levels", *levels);
        cmd->add_option("--spaces", *spaces);
        cmd->add_option("--uv-bound", *uv_bound);
        cmd->callback([&, suite, points, max_value, max_n, bound, levels, spaces, uv_bound]() {
            action = [&, suite, points, max_value, max_n, bound, levels, spaces, uv_bound]() {
                std::vector<OracleReport> reports;
                if (*suite == "metric") {
                    reports.push_back(oracle_extension_soundness(*points, *max_value));
                    reports.push_back(oracle_sphere_diameter(*points, *max_value));
                } else if (*suite == "toeplitz") {
                    reports.push_back(oracle_amalgamation(*max_n, *max_value));
                    reports.push_back(oracle_extend_one(std::min<std::size_t>(*max_n, 3),
                                                        *max_value));
                    reports.push_back(oracle_prolong(std::min<std::size_t>(*max_n, 3),
                                                     *max_value));
                } else if (*suite == "isometry") {
                    reports.push_back(oracle_bounded_isometry(*points, *max_value, *bound));
                } else if (*suite == "group2") {
                    reports.push_back(oracle_invariant_equivalence(*max_value));
                    reports.push_back(oracle_invariance(*levels, 5));
                } else {
                    reports.push_back(oracle_targeted_witness(*spaces, *points, *uv_bound));
                }
                json j = json::array();
                bool pass = true;
                for (const auto& r : reports) {
                    pass = pass && r.pass;
                    j.push_back(report_to_json(r));
                }
                out.write(j);
                if (!pass) {
                    std::cerr << error_to_json(domain_error("oracle/counterexample",
                                                            "a suite found a counterexample"))
                                     .dump()
                              << "\n";
                    return 2;
                }
                return 0;
            };
        });
    }

    // Let global flags (--seed, --out, --format) appear after subcommands.
    auto enable_fallthrough = [](auto&& self, CLI::App* a) -> void {
        for (CLI::App* sub : a->get_subcommands(nullptr)) {
            sub->fallthrough();
            self(self, sub);
        }
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
        return action ? action() : 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"code", "cli/parse"}, {"message", e.what()}, {"context", json::object()}}
                         .dump()
                  << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << error_to_json(e).dump() << "\n";
        return e.kind() == Error::Kind::parse ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"code", "internal"}, {"message", e.what()}, {"context", json::object()}}
                         .dump()
                  << "\n";
        return 1;
    }
}
