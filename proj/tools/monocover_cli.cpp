#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monocover/monocover.hpp"

using namespace monocover;
using nlohmann::json;

namespace {

// Relative output paths land in $MONOCOVER_OUTPUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
    if (path.empty() || path == "-") return "-";
    const char* dir = std::getenv("MONOCOVER_OUTPUT_DIR");
    std::filesystem::path p(path);
    if (dir && *dir && p.is_relative()) {
        std::filesystem::create_directories(dir);
        return (std::filesystem::path(dir) / p).string();
    }
    return path;
}

class Output {
public:
    explicit Output(const std::string& path, bool append = false) {
        const std::string resolved = resolve_output(path);
        if (resolved != "-") {
            file_ = std::make_unique<std::ofstream>(resolved, append ? std::ios::app : std::ios::trunc);
            if (!*file_) throw std::runtime_error("cannot open " + resolved + " for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

GraphFile load_graph(const std::string& path) {
    if (path == "-") return read_graph(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

json vertex_list(const VertexSet& s) {
    json out = json::array();
    s.for_each([&](VertexId v) { out.push_back(to_string(v)); });
    return out;
}

json audit_json(const AuditReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims) {
        json item{{"name", c.name}, {"relation", c.relation}, {"status", to_string(c.status)}};
        if (c.status != AuditStatus::NotApplicable) {
            item["measured"] = c.measured;
            item["bound"] = c.bound;
        }
        claims.push_back(item);
    }
    return claims;
}

json property_json(const PropertyReport& r) {
    json j{{"property", to_string(r.id)},
           {"status", to_string(r.status)},
           {"checked_instances", r.checked_instances},
           {"violation_count", r.violation_count}};
    if (!r.note.empty()) j["note"] = r.note;
    if (r.min_measured) {
        j["min"] = *r.min_measured;
        j["max"] = *r.max_measured;
        j["mean"] = r.mean_measured;
    }
    json witnesses = json::array();
    for (const auto& w : r.violations) {
        json vs = json::array();
        for (auto v : w.vertices) vs.push_back(to_string(v));
        witnesses.push_back({{"vertices", vs}, {"measured", w.measured}, {"detail", w.detail}});
    }
    j["witnesses"] = witnesses;
    return j;
}

Rational parse_rational_option(const std::string& text, const char* name) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError(name, e.what());
    }
}

std::vector<std::string> seed_comment(std::uint64_t seed) { return {"seed " + std::to_string(seed)}; }

// Splices a flat key = value file into argv as --key value, skipping keys already given on the command line.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    for (std::size_t k = 1; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) {
            path = args[k + 1];
            args.erase(args.begin() + k, args.begin() + k + 2);
            break;
        }
        if (args[k].rfind("--config=", 0) == 0) {
            path = args[k].substr(9);
            args.erase(args.begin() + k);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    auto given = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "config " + path + ": expected key = value");
        std::istringstream key_in(line.substr(0, eq)), value_in(line.substr(eq + 1));
        std::string key, tok;
        key_in >> key;
        if (key.empty()) throw ParseError(line_no, "config " + path + ": empty key");
        const std::string flag = "--" + key;
        if (given(flag)) continue;
        std::vector<std::string> values;
        while (value_in >> tok) values.push_back(tok);
        if (values.size() == 1) {
            args.push_back(flag + "=" + values[0]);
        } else {
            args.push_back(flag);
            args.insert(args.end(), values.begin(), values.end());
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monochromatic tree covers and partitions of 2-coloured bipartite graphs"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file mirroring the command-line flags; flags override it");

    // sample
    auto* sample = app.add_subcommand("sample", "sample a random bipartite graph");
    std::size_t s_n = 100;
    std::optional<std::size_t> s_n2;
    std::string s_p = "1/2", s_out = "-";
    std::optional<double> s_c;
    std::optional<std::string> s_mindeg;
    std::uint64_t s_seed = 0;
    bool s_coloured = false;
    sample->add_option("--n", s_n, "vertices per part")->check(CLI::PositiveNumber);
    sample->add_option("--n2", s_n2, "size of V2 (defaults to n)");
    sample->add_option("--p", s_p, "edge probability, e.g. 0.05 or 1/20");
    auto* s_p_opt = sample->get_option("--p");
    sample->add_option("--c", s_c, "use p = C*sqrt(ln n/n)")->excludes(s_p_opt);
    sample->add_option("--mindeg", s_mindeg, "sample a dense subgraph of K_{n,n} with this minimum-degree fraction");
    sample->add_option("--seed", s_seed);
    sample->add_flag("--coloured", s_coloured, "also attach a uniform random colouring");
    sample->add_option("-o,--output", s_out);

    // colour
    auto* colour = app.add_subcommand("colour", "colour a graph uniformly at random");
    std::string c_in = "-", c_out = "-", c_red = "1/2";
    std::uint64_t c_seed = 0;
    colour->add_option("input", c_in, "graph file ('-' for stdin)");
    colour->add_option("--red-p", c_red, "probability that an edge is red");
    colour->add_option("--seed", c_seed);
    colour->add_option("-o,--output", c_out);

    // adversary
    auto* adversary = app.add_subcommand("adversary", "lower-bound colourings");
    std::string a_mode = "lower3", a_in = "-", a_out = "-";
    std::size_t a_n = 8;
    unsigned a_r = 2;
    std::uint64_t a_seed = 0;
    adversary->add_option("--mode", a_mode)->check(CLI::IsMember({"lower3", "lower4", "blowup"}));
    adversary->add_option("input", a_in, "graph file for lower3/lower4");
    adversary->add_option("--n", a_n, "blowup: vertices per part");
    adversary->add_option("--r", a_r, "blowup: number of colours");
    adversary->add_option("--seed", a_seed, "accepted for uniformity; the constructions are deterministic");
    adversary->add_option("-o,--output", a_out);

    // cover
    auto* cover = app.add_subcommand("cover", "almost-cover by at most three monochromatic trees");
    std::string v_in = "-", v_out = "-", v_eps = "1/10";
    std::optional<std::string> v_p, v_audit;
    std::optional<std::int64_t> v_pnum, v_pden;
    std::uint64_t v_seed = 0;
    std::size_t v_retry = 16;
    cover->add_option("input", v_in, "coloured graph file");
    cover->add_option("--p", v_p, "calibration density");
    cover->add_option("--p-num", v_pnum);
    cover->add_option("--p-den", v_pden);
    cover->add_option("--epsilon", v_eps);
    cover->add_option("--seed", v_seed);
    cover->add_option("--retry-limit", v_retry)->check(CLI::PositiveNumber);
    cover->add_option("-o,--output", v_out, "cover file");
    cover->add_option("--audit", v_audit, "append a JSON-lines audit record");

    // partition
    auto* partition = app.add_subcommand("partition", "partition a dense graph into at most three monochromatic parts");
    std::string t_in = "-", t_out = "-", t_delta = "1/20";
    std::optional<std::string> t_sub, t_audit;
    std::uint64_t t_seed = 0;
    std::size_t t_retry = 32;
    partition->add_option("input", t_in, "coloured graph file");
    partition->add_option("--delta", t_delta);
    partition->add_option("--subsample-p", t_sub, "defaults to min(1/25, delta)");
    partition->add_option("--seed", t_seed);
    partition->add_option("--retry-limit", t_retry)->check(CLI::PositiveNumber);
    partition->add_option("-o,--output", t_out, "partition file");
    partition->add_option("--audit", t_audit, "append a JSON-lines audit record");

    // exact
    auto* exact = app.add_subcommand("exact", "exact tree cover / partition numbers");
    std::string e_mode = "tc", e_in = "-";
    std::size_t e_n = 3, e_bound = 2;
    unsigned e_r = 2, e_threads = 1;
    bool e_force = false, e_strict = false;
    std::uint64_t e_seed = 0;
    exact->add_option("--mode", e_mode)->check(CLI::IsMember({"tc", "tp", "knn"}));
    exact->add_option("input", e_in, "coloured graph file for tc/tp");
    exact->add_option("--n", e_n, "knn: part size");
    exact->add_option("--r", e_r, "knn: colours");
    exact->add_option("--bound", e_bound, "knn: bound to check");
    exact->add_option("--threads", e_threads);
    exact->add_flag("--force", e_force, "lift the size limits");
    exact->add_flag("--strict", e_strict, "tp: forbid singleton parts");
    exact->add_option("--seed", e_seed, "unused; exact answers are deterministic");

    // check
    auto* check = app.add_subcommand("check", "pseudo-random property checks (JSON report)");
    std::string k_in = "-", k_p = "1/2", k_eps = "1/10", k_out = "-";
    bool k_codegrees = true, k_with_cover = false;
    std::uint64_t k_seed = 0;
    check->add_option("input", k_in, "graph file");
    check->add_option("--p", k_p);
    check->add_option("--epsilon", k_eps);
    check->add_option("--codegrees", k_codegrees, "include the O(n^2) codegree scan");
    check->add_flag("--with-cover", k_with_cover, "also check the sets an almost_cover run uses (needs a colouring)");
    check->add_option("--seed", k_seed, "seed for the almost_cover run");
    check->add_option("-o,--output", k_out);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "threshold sweep, one CSV row per trial");
    std::vector<std::size_t> w_n;
    std::vector<double> w_c;
    std::vector<std::string> w_p;
    std::size_t w_trials = 1, w_retry = 16;
    std::uint64_t w_seed = 0;
    std::string w_source = "uniform", w_alg = "almost_cover", w_graph = "gnp", w_eps = "1/10", w_delta = "1/20",
                w_out = "-";
    unsigned w_threads = 1;
    bool w_timing = false;
    sweep->add_option("--n", w_n, "part sizes")->required();
    sweep->add_option("--c", w_c, "threshold constants C");
    sweep->add_option("--p", w_p, "explicit p values");
    sweep->add_option("--trials", w_trials)->check(CLI::PositiveNumber);
    sweep->add_option("--seed", w_seed, "base seed");
    sweep->add_option("--source", w_source)->check(CLI::IsMember({"uniform", "lower3", "lower4"}));
    sweep->add_option("--algorithm", w_alg)->check(CLI::IsMember({"almost_cover", "partition3", "exact_tc"}));
    sweep->add_option("--graph", w_graph, "gnp, or mindeg (p is then the minimum-degree fraction)")
        ->check(CLI::IsMember({"gnp", "mindeg"}));
    sweep->add_option("--epsilon", w_eps);
    sweep->add_option("--delta", w_delta);
    sweep->add_option("--retry-limit", w_retry)->check(CLI::PositiveNumber);
    sweep->add_option("--threads", w_threads);
    sweep->add_flag("--timing", w_timing, "record wall time (output is then no longer byte-stable)");
    sweep->add_option("-o,--output", w_out);

    // summarise
    auto* summ = app.add_subcommand("summarise", "aggregate a sweep CSV per cell");
    std::string m_in = "-", m_out = "-";
    std::optional<std::string> m_plot;
    summ->add_option("input", m_in, "sweep CSV");
    summ->add_option("-o,--output", m_out);
    summ->add_option("--gnuplot", m_plot, "also write a gnuplot script plotting success rate against p");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::vector<char*> cargs;
    for (auto& a : args) cargs.push_back(a.data());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*sample) {
            const std::size_t n2 = s_n2.value_or(s_n);
            BipartiteGraph g;
            std::vector<std::string> comments = seed_comment(s_seed);
            if (s_mindeg) {
                if (n2 != s_n) throw CLI::ValidationError("--mindeg", "needs a balanced graph");
                g = sample_mindeg_subgraph(s_n, parse_rational_option(*s_mindeg, "--mindeg"), Seed{s_seed});
                comments.push_back("mindeg " + *s_mindeg);
            } else {
                const Rational p = s_c ? threshold_p(*s_c, s_n) : parse_rational_option(s_p, "--p");
                g = sample_bipartite({s_n, n2, p}, Seed{s_seed});
                comments.push_back("p " + p.str());
            }
            Output out(s_out);
            if (s_coloured) write_graph(out.stream(), g, sample_colouring(g, Rational(1, 2), Seed{s_seed}), comments);
            else write_graph(out.stream(), g, comments);
            return 0;
        }
        if (*colour) {
            auto file = load_graph(c_in);
            auto c = sample_colouring(file.graph, parse_rational_option(c_red, "--red-p"), Seed{c_seed});
            Output out(c_out);
            write_graph(out.stream(), file.graph, c, seed_comment(c_seed));
            return 0;
        }
        if (*adversary) {
            Output out(a_out);
            if (a_mode == "blowup") {
                auto res = colour_blowup_pair(a_n, a_r);
                write_graph(out.stream(), res.graph, res.colouring,
                            {"blowup n=" + std::to_string(a_n) + " r=" + std::to_string(a_r)});
                return 0;
            }
            auto file = load_graph(a_in);
            if (a_mode == "lower3") {
                auto res = colour_lower3(file.graph);
                write_graph(out.stream(), file.graph, res.colouring,
                            {"lower3 r=" + to_string(res.witness.r) + " b=" + to_string(res.witness.b)});
            } else {
                auto res = colour_lower4(file.graph);
                const auto& w = res.witness;
                write_graph(out.stream(), file.graph, res.colouring,
                            {"lower4 " + to_string(w.u1) + " " + to_string(w.v1) + " " + to_string(w.u2) + " " +
                             to_string(w.v2)});
            }
            return 0;
        }
        if (*cover) {
            auto file = load_graph(v_in);
            Rational p = Rational(1, 2);
            if (v_pnum || v_pden) {
                if (!v_pnum || !v_pden) throw CLI::ValidationError("--p-num/--p-den", "give both");
                p = Rational(*v_pnum, *v_pden);
            } else if (v_p) {
                p = parse_rational_option(*v_p, "--p");
            }
            CoverParams params{p, parse_rational_option(v_eps, "--epsilon"), v_retry, Seed{v_seed}};
            const auto c = file.two_colouring();
            auto [tc, state] = almost_cover(file.graph, c, params);
            {
                Output out(v_out);
                write_cover(out.stream(), tc);
            }
            json summary{{"trees", tc.trees.size()},
                         {"uncovered", tc.uncovered.count()},
                         {"case", to_string(state.cover_case)},
                         {"bound_200_over_p", (Rational(200) / p).to_double()}};
            if (v_audit) {
                json rec = summary;
                rec["p"] = p.str();
                rec["seed"] = v_seed;
                rec["rho_attempts"] = state.rho_attempts;
                rec["rho_prime_attempts"] = state.rho_prime_attempts;
                json reasons = json::array();
                for (const auto& [v, why] : state.uncovered_reasons) reasons.push_back({to_string(v), to_string(why)});
                rec["uncovered_reasons"] = reasons;
                rec["claims"] = audit_json(audit_state(file.graph, c, params, state));
                Output audit(*v_audit, true);
                audit.stream() << rec.dump() << '\n';
            }
            if (v_out != "-") std::cout << summary.dump() << '\n';
            return 0;
        }
        if (*partition) {
            auto file = load_graph(t_in);
            PartitionParams params;
            params.delta = parse_rational_option(t_delta, "--delta");
            if (t_sub) params.subsample_p = parse_rational_option(*t_sub, "--subsample-p");
            params.retry_limit = t_retry;
            params.seed = Seed{t_seed};
            const auto c = file.two_colouring();
            auto [part, state] = partition3(file.graph, c, params);
            {
                Output out(t_out);
                write_partition(out.stream(), part);
            }
            json summary{{"parts", part.parts.size()}, {"u0", state.u0.has_value()}, {"shortcut", !state.populated}};
            if (t_audit) {
                json rec = summary;
                rec["delta"] = params.delta.str();
                rec["seed"] = t_seed;
                rec["x_prime_attempts"] = state.x_prime_attempts;
                rec["jy_attempts"] = state.jy_attempts;
                rec["jx_attempts"] = state.jx_attempts;
                rec["claims"] = audit_json(audit_partition_state(state, file.graph, c, params));
                Output audit(*t_audit, true);
                audit.stream() << rec.dump() << '\n';
            }
            if (t_out != "-") std::cout << summary.dump() << '\n';
            return 0;
        }
        if (*exact) {
            json out;
            if (e_mode == "knn") {
                auto rep = exhaustive_knn_check(e_n, e_r, e_bound, e_threads, e_force);
                out = {{"n", rep.n},
                       {"r", rep.r},
                       {"bound", rep.bound},
                       {"colourings_checked", rep.colourings_checked},
                       {"max_tc", rep.max_tc},
                       {"histogram", rep.histogram},
                       {"violation_count", rep.violation_count},
                       {"violations", rep.violations}};
            } else {
                auto file = load_graph(e_in);
                if (!file.colouring) throw std::invalid_argument("exact needs a coloured graph file");
                ExactResult res = e_mode == "tc" ? tc_exact(file.graph, *file.colouring)
                                                 : tp_exact(file.graph, file.two_colouring(), !e_strict, e_force);
                json witness = json::array();
                for (const auto& s : res.witness) witness.push_back({{"colour", s.colour}, {"vertices", vertex_list(s.vertices)}});
                out = {{"mode", e_mode},
                       {"feasible", res.feasible},
                       {"value", res.value},
                       {"nodes_explored", res.nodes_explored},
                       {"witness", witness}};
            }
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (*check) {
            auto file = load_graph(k_in);
            const auto& g = file.graph;
            const Rational p = parse_rational_option(k_p, "--p"), eps = parse_rational_option(k_eps, "--epsilon");
            std::vector<PropertyReport> reports;
            reports.push_back(check_degrees(g, p, eps));
            if (k_codegrees) reports.push_back(check_codegrees(g, p, eps));
            reports.push_back(pair_count_report(g));
            if (k_with_cover) {
                const auto c = file.two_colouring();
                auto [tc, state] = almost_cover(g, c, CoverParams{p, eps, 16, Seed{k_seed}});
                if (state.populated) {
                    const Colour c1 = state.majority_colour;
                    const VertexId r1 = state.primary_root(), r2 = state.secondary_root();
                    VertexSet nr = VertexSet::on_side(g.n1(), g.n2(), r2.part, c.neighbours(r1, c1));
                    VertexSet nb = VertexSet::on_side(g.n1(), g.n2(), r1.part, c.neighbours(r2, swap_colour(c1)));
                    nr.erase(r2);
                    nb.erase(r1);
                    reports.push_back(check_expansion(g, p, nb, nr));
                    reports.push_back(check_domination(g, p, state.j1));
                }
                for (EdgeFilter f : {EdgeFilter::Red, EdgeFilter::Blue})
                    reports.push_back(check_min_degree_connectivity(g, p, eps, g.all_vertices(), f, &c));
            }
            json out = json::array();
            bool violated = false;
            for (const auto& r : reports) {
                out.push_back(property_json(r));
                violated = violated || r.violated();
            }
            Output o(k_out);
            o.stream() << out.dump(2) << '\n';
            return violated ? 1 : 0;
        }
        if (*sweep) {
            SweepConfig cfg;
            cfg.n_values = w_n;
            cfg.c_values = w_c;
            for (const auto& p : w_p) cfg.p_values.push_back(parse_rational_option(p, "--p"));
            cfg.trials = w_trials;
            cfg.base_seed = Seed{w_seed};
            cfg.source = parse_source(w_source);
            cfg.algorithm = parse_algorithm(w_alg);
            cfg.graph = parse_graph_model(w_graph);
            cfg.epsilon = parse_rational_option(w_eps, "--epsilon");
            cfg.delta = parse_rational_option(w_delta, "--delta");
            cfg.retry_limit = w_retry;
            cfg.threads = w_threads;
            cfg.timing = w_timing;
            auto records = run_sweep(cfg);
            Output out(w_out);
            write_records_csv(out.stream(), records);
            return 0;
        }
        if (*summ) {
            std::vector<SweepRecord> records;
            if (m_in == "-") {
                records = read_records_csv(std::cin);
            } else {
                std::ifstream in(m_in);
                if (!in) throw std::runtime_error("cannot open " + m_in);
                records = read_records_csv(in);
            }
            if (records.empty()) throw std::invalid_argument("no records to summarise");
            auto rows = summarise(records);
            {
                Output out(m_out);
                write_summary_csv(out.stream(), rows);
            }
            if (m_plot) {
                Output plot(*m_plot);
                write_gnuplot_script(plot.stream(), m_out == "-" ? "summary.csv" : resolve_output(m_out), rows);
            }
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const StepError& e) {
        std::cerr << json{{"error", e.kind()}, {"step", e.step()}, {"detail", e.what()}}.dump() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
