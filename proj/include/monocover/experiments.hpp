#pragma once

// Threshold sweeps: sample, colour, run one algorithm, validate, record.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "monocover/adversary.hpp"
#include "monocover/almost_cover.hpp"
#include "monocover/errors.hpp"
#include "monocover/exact.hpp"
#include "monocover/mindeg_partition.hpp"
#include "monocover/random.hpp"

namespace monocover {

enum class ColouringSource { Uniform, Lower3, Lower4 };
enum class Algorithm { AlmostCover, Partition3, ExactTc };
enum class GraphModel { Gnp, MinDegree };

inline std::string to_string(ColouringSource s) {
    switch (s) {
        case ColouringSource::Uniform: return "uniform";
        case ColouringSource::Lower3: return "lower3";
        case ColouringSource::Lower4: return "lower4";
    }
    return "unknown";
}
inline std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::AlmostCover: return "almost_cover";
        case Algorithm::Partition3: return "partition3";
        case Algorithm::ExactTc: return "exact_tc";
    }
    return "unknown";
}
inline std::string to_string(GraphModel m) { return m == GraphModel::Gnp ? "gnp" : "mindeg"; }

inline ColouringSource parse_source(const std::string& s) {
    if (s == "uniform") return ColouringSource::Uniform;
    if (s == "lower3") return ColouringSource::Lower3;
    if (s == "lower4") return ColouringSource::Lower4;
    throw std::invalid_argument("unknown colouring source '" + s + "'");
}
inline Algorithm parse_algorithm(const std::string& s) {
    if (s == "almost_cover") return Algorithm::AlmostCover;
    if (s == "partition3") return Algorithm::Partition3;
    if (s == "exact_tc") return Algorithm::ExactTc;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}
inline GraphModel parse_graph_model(const std::string& s) {
    if (s == "gnp") return GraphModel::Gnp;
    if (s == "mindeg") return GraphModel::MinDegree;
    throw std::invalid_argument("unknown graph model '" + s + "'");
}

/// p = C * sqrt(ln n / n), rounded to a multiple of 1e-6 and capped at 1.
inline Rational threshold_p(double c, std::size_t n) {
    if (n < 2) throw std::invalid_argument("threshold scaling needs n >= 2");
    const double p = c * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(n));
    if (!(p > 0)) throw std::invalid_argument("threshold constant must be positive");
    if (p >= 1) return Rational(1);
    Rational r = Rational::approximate(p, 1'000'000);
    if (r <= Rational(0)) throw std::invalid_argument("p rounds to zero");
    return r;
}

struct SweepConfig {
    std::vector<std::size_t> n_values;
    std::vector<double> c_values;     // used when p_values is empty
    std::vector<Rational> p_values;
    std::size_t trials = 1;
    Seed base_seed{};
    ColouringSource source = ColouringSource::Uniform;
    Algorithm algorithm = Algorithm::AlmostCover;
    GraphModel graph = GraphModel::Gnp;  // MinDegree reads p as the minimum-degree fraction
    Rational epsilon{1, 10};
    Rational delta{1, 20};
    std::size_t retry_limit = 16;
    unsigned threads = 1;
    bool timing = false;  // runtime_ms stays 0 otherwise, keeping output byte-stable

    void validate() const {
        if (n_values.empty()) throw std::invalid_argument("sweep needs at least one n");
        if (p_values.empty() && c_values.empty()) throw std::invalid_argument("sweep needs C or p values");
        if (trials < 1) throw std::invalid_argument("trials must be at least 1");
        for (const auto& p : p_values)
            if (p <= Rational(0) || p > Rational(1)) throw std::invalid_argument("p values must lie in (0,1]");
        for (auto n : n_values)
            if (n < 1) throw std::invalid_argument("n must be at least 1");
    }

    /// The p values of the cells for one n, in configuration order.
    std::vector<Rational> ps_for(std::size_t n) const {
        if (!p_values.empty()) return p_values;
        std::vector<Rational> out;
        for (double c : c_values) out.push_back(threshold_p(c, n));
        return out;
    }
};

struct SweepRecord {
    std::size_t n = 0;
    Rational p{1};
    std::uint64_t seed = 0;
    ColouringSource source = ColouringSource::Uniform;
    Algorithm algorithm = Algorithm::AlmostCover;
    std::size_t trees = 0;
    std::size_t uncovered = 0;
    bool valid = false;
    std::string outcome;  // cover case, "partition", "exact", or "error:<kind>:<step>"
    std::int64_t runtime_ms = 0;
    std::optional<bool> audit_ok;  // not part of the CSV

    bool errored() const { return outcome.rfind("error:", 0) == 0; }
    bool success() const {
        if (!valid || errored() || trees > 3) return false;
        if (algorithm == Algorithm::AlmostCover) return count_at_most(uncovered, Rational(200) / p);
        return true;
    }
};

namespace detail {

inline std::string error_tag(const std::exception& e) {
    if (auto* s = dynamic_cast<const StepError*>(&e)) return "error:" + s->kind() + ":" + s->step();
    if (dynamic_cast<const ConstructionInfeasible*>(&e)) return "error:construction-infeasible:colouring";
    if (dynamic_cast<const TooLargeError*>(&e)) return "error:too-large:exact";
    return "error:exception:run";
}

inline TwoColouring make_colouring(const BipartiteGraph& g, ColouringSource source, Seed seed) {
    switch (source) {
        case ColouringSource::Uniform: return sample_colouring(g, Rational(1, 2), seed);
        case ColouringSource::Lower3: return colour_lower3(g).colouring;
        case ColouringSource::Lower4: return colour_lower4(g).colouring;
    }
    throw std::logic_error("unreachable colouring source");
}

}  // namespace detail

/// Runs one trial from scratch; replaying its (n, p, seed, source, algorithm)
/// reproduces the record.
inline SweepRecord run_trial(std::size_t n, const Rational& p, Seed seed, const SweepConfig& config) {
    SweepRecord rec;
    rec.n = n;
    rec.p = p;
    rec.seed = seed.value;
    rec.source = config.source;
    rec.algorithm = config.algorithm;
    const auto start = std::chrono::steady_clock::now();
    try {
        const BipartiteGraph g = config.graph == GraphModel::Gnp ? sample_bipartite({n, n, p}, seed)
                                                                 : sample_mindeg_subgraph(n, p, seed);
        const TwoColouring c = detail::make_colouring(g, config.source, seed);
        switch (config.algorithm) {
            case Algorithm::AlmostCover: {
                CoverParams params{p, config.epsilon, config.retry_limit, seed};
                const auto [cover, state] = almost_cover(g, c, params);
                rec.trees = cover.trees.size();
                rec.uncovered = cover.uncovered.count();
                rec.valid = validate_cover(g, c, cover).ok();
                rec.outcome = to_string(state.cover_case);
                rec.audit_ok = audit_state(g, c, params, state).count(AuditStatus::Violated) == 0;
                break;
            }
            case Algorithm::Partition3: {
                PartitionParams params;
                params.delta = config.delta;
                params.retry_limit = config.retry_limit;
                params.seed = seed;
                const auto [partition, state] = partition3(g, c, params);
                rec.trees = partition.parts.size();
                rec.valid = validate_partition(g, c, partition).ok();
                rec.outcome = "partition";
                rec.audit_ok = audit_partition_state(state, g, c, params).count(AuditStatus::Violated) == 0;
                break;
            }
            case Algorithm::ExactTc: {
                const auto result = tc_exact(g, c);
                rec.trees = result.value;
                rec.valid = true;
                rec.outcome = "exact";
                break;
            }
        }
    } catch (const std::exception& e) {
        rec.outcome = detail::error_tag(e);
        rec.valid = false;
    }
    if (config.timing)
        rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

/// Records are ordered by (n, p index, trial) whatever the thread count.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    config.validate();
    struct Job {
        std::size_t n;
        Rational p;
        Seed seed;
    };
    std::vector<Job> jobs;
    for (auto n : config.n_values) {
        const auto ps = config.ps_for(n);
        for (std::size_t pi = 0; pi < ps.size(); ++pi)
            for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back({n, ps[pi], trial_seed(config.base_seed, n, pi, t)});
    }
    std::vector<SweepRecord> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) out[k] = run_trial(jobs[k].n, jobs[k].p, jobs[k].seed, config);
    };
    const unsigned threads = std::max(1u, config.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

inline constexpr const char* kSweepCsvHeader = "n,p_num,p_den,seed,source,algorithm,trees,uncovered,valid,case,runtime_ms";

inline void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.n << ',' << r.p.num() << ',' << r.p.den() << ',' << r.seed << ',' << to_string(r.source) << ','
            << to_string(r.algorithm) << ',' << r.trees << ',' << r.uncovered << ',' << (r.valid ? 1 : 0) << ','
            << r.outcome << ',' << r.runtime_ms << '\n';
    }
}

inline std::vector<SweepRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) throw ParseError(1, "missing or unexpected CSV header");
    std::vector<SweepRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 11) throw ParseError(lineno, "expected 11 fields");
        try {
            SweepRecord r;
            r.n = std::stoull(f[0]);
            r.p = Rational(std::stoll(f[1]), std::stoll(f[2]));
            r.seed = std::stoull(f[3]);
            r.source = parse_source(f[4]);
            r.algorithm = parse_algorithm(f[5]);
            r.trees = std::stoull(f[6]);
            r.uncovered = std::stoull(f[7]);
            r.valid = f[8] == "1";
            r.outcome = f[9];
            r.runtime_ms = std::stoll(f[10]);
            out.push_back(std::move(r));
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        } catch (const std::out_of_range& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return out;
}

struct SummaryRow {
    std::size_t n = 0;
    Rational p{1};
    ColouringSource source = ColouringSource::Uniform;
    Algorithm algorithm = Algorithm::AlmostCover;
    std::size_t trials = 0, errors = 0, valid = 0, successes = 0;
    double mean_trees = 0, mean_uncovered = 0;
    std::size_t max_uncovered = 0;
    std::optional<double> audit_rate;

    double valid_rate() const { return trials ? static_cast<double>(valid) / static_cast<double>(trials) : 0; }
    double success_rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0; }
};

/// One row per (n, p, source, algorithm) cell, sorted by that key.
inline std::vector<SummaryRow> summarise(const std::vector<SweepRecord>& records) {
    using Key = std::tuple<std::size_t, Rational, int, int>;
    auto less = [](const Key& a, const Key& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return std::tie(std::get<2>(a), std::get<3>(a)) < std::tie(std::get<2>(b), std::get<3>(b));
    };
    std::map<Key, std::vector<const SweepRecord*>, decltype(less)> cells(less);
    for (const auto& r : records)
        cells[{r.n, r.p, static_cast<int>(r.source), static_cast<int>(r.algorithm)}].push_back(&r);
    std::vector<SummaryRow> out;
    for (const auto& [key, recs] : cells) {
        SummaryRow row;
        row.n = std::get<0>(key);
        row.p = std::get<1>(key);
        row.source = recs.front()->source;
        row.algorithm = recs.front()->algorithm;
        row.trials = recs.size();
        std::size_t audited = 0, audit_ok = 0, completed = 0;
        double trees = 0, uncovered = 0;
        for (const auto* r : recs) {
            if (r->errored()) ++row.errors;
            else {
                ++completed;
                trees += static_cast<double>(r->trees);
                uncovered += static_cast<double>(r->uncovered);
                row.max_uncovered = std::max(row.max_uncovered, r->uncovered);
            }
            if (r->valid) ++row.valid;
            if (r->success()) ++row.successes;
            if (r->audit_ok) {
                ++audited;
                if (*r->audit_ok) ++audit_ok;
            }
        }
        if (completed) {
            row.mean_trees = trees / static_cast<double>(completed);
            row.mean_uncovered = uncovered / static_cast<double>(completed);
        }
        if (audited) row.audit_rate = static_cast<double>(audit_ok) / static_cast<double>(audited);
        out.push_back(row);
    }
    return out;
}

inline constexpr const char* kSummaryCsvHeader =
    "n,p_num,p_den,source,algorithm,trials,errors,valid_rate,success_rate,mean_trees,mean_uncovered,max_uncovered,audit_rate";

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    auto fixed = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return std::string(buf);
    };
    out << kSummaryCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << r.p.num() << ',' << r.p.den() << ',' << to_string(r.source) << ',' << to_string(r.algorithm)
            << ',' << r.trials << ',' << r.errors << ',' << fixed(r.valid_rate()) << ',' << fixed(r.success_rate()) << ','
            << fixed(r.mean_trees) << ',' << fixed(r.mean_uncovered) << ',' << r.max_uncovered << ','
            << (r.audit_rate ? fixed(*r.audit_rate) : std::string("NA")) << '\n';
    }
}

/// Gnuplot script plotting success rate against p, one curve per n.
inline void write_gnuplot_script(std::ostream& out, const std::string& summary_csv, const std::vector<SummaryRow>& rows) {
    std::vector<std::size_t> ns;
    for (const auto& r : rows)
        if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 'p'\nset ylabel 'success rate'\nset yrange [0:1.05]\n"
        << "plot ";
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (k) out << ", \\\n     ";
        out << "'" << summary_csv << "' using ($1==" << ns[k] << " ? $2/$3 : 1/0):9 with linespoints title 'n=" << ns[k] << "'";
    }
    out << '\n';
}

}  // namespace monocover
