#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"

using namespace monocover;

namespace {

std::string csv_of(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    write_records_csv(out, records);
    return out.str();
}

std::string summary_of(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    write_summary_csv(out, summarise(records));
    return out.str();
}

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.n_values = {40, 60};
    cfg.c_values = {2.0, 4.0};
    cfg.trials = 3;
    cfg.base_seed = Seed{11};
    return cfg;
}

}  // namespace

TEST(ThresholdP, Values) {
    const double raw = 5.0 * std::sqrt(std::log(1000.0) / 1000.0);
    EXPECT_EQ(threshold_p(5.0, 1000), Rational(std::llround(raw * 1e6), 1000000));
    EXPECT_EQ(threshold_p(5.0, 1000), Rational(83113, 200000));
    EXPECT_EQ(threshold_p(100.0, 50), Rational(1));
    EXPECT_THROW(threshold_p(1.0, 1), std::invalid_argument);
    EXPECT_THROW(threshold_p(-1.0, 100), std::invalid_argument);
}

TEST(Sweep, SmokeRun) {
    SweepConfig cfg;
    cfg.n_values = {100};
    cfg.c_values = {5.0};
    auto records = run_sweep(cfg);
    ASSERT_EQ(records.size(), 1u);
    EXPECT_TRUE(records[0].valid);
    EXPECT_FALSE(records[0].errored());
    EXPECT_LE(records[0].trees, 3u);
    EXPECT_EQ(records[0].runtime_ms, 0);
}

TEST(Sweep, RecordOrderAndSeeds) {
    auto cfg = small_config();
    auto records = run_sweep(cfg);
    ASSERT_EQ(records.size(), 2u * 2 * 3);
    std::size_t k = 0;
    for (auto n : cfg.n_values)
        for (std::size_t pi = 0; pi < 2; ++pi)
            for (std::size_t t = 0; t < 3; ++t, ++k) {
                EXPECT_EQ(records[k].n, n);
                EXPECT_EQ(records[k].p, cfg.ps_for(n)[pi]);
                EXPECT_EQ(records[k].seed, trial_seed(cfg.base_seed, n, pi, t).value);
            }
}

TEST(Sweep, DeterministicAndThreadInvariant) {
    auto cfg = small_config();
    const auto one = csv_of(run_sweep(cfg));
    EXPECT_EQ(one, csv_of(run_sweep(cfg)));
    cfg.threads = 3;
    EXPECT_EQ(one, csv_of(run_sweep(cfg)));
}

TEST(Sweep, RecordsReplay) {
    auto cfg = small_config();
    cfg.source = ColouringSource::Lower3;
    for (const auto& r : run_sweep(cfg)) {
        auto again = run_trial(r.n, r.p, Seed{r.seed}, cfg);
        EXPECT_EQ(csv_of({r}), csv_of({again}));
    }
}

TEST(Sweep, AlgorithmsAndSources) {
    SweepConfig cfg;
    cfg.n_values = {64};
    cfg.p_values = {Rational(13, 16) + Rational(1, 20)};
    cfg.graph = GraphModel::MinDegree;
    cfg.algorithm = Algorithm::Partition3;
    cfg.trials = 4;
    for (const auto& r : run_sweep(cfg)) {
        EXPECT_TRUE(r.valid) << r.outcome;
        EXPECT_EQ(r.outcome, "partition");
    }

    SweepConfig ex;
    ex.n_values = {5};
    ex.p_values = {Rational(1, 2)};
    ex.algorithm = Algorithm::ExactTc;
    ex.source = ColouringSource::Lower3;
    ex.trials = 10;
    std::size_t built = 0;
    for (const auto& r : run_sweep(ex)) {
        if (r.errored()) {
            EXPECT_EQ(r.outcome, "error:construction-infeasible:colouring");
            continue;
        }
        EXPECT_GE(r.trees, 3u);
        ++built;
    }
    EXPECT_GT(built, 0u);
}

TEST(Sweep, InvalidConfigs) {
    SweepConfig cfg;
    EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
    cfg.n_values = {10};
    EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
    cfg.p_values = {Rational(3, 2)};
    EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
    cfg.p_values = {Rational(1, 2)};
    cfg.trials = 0;
    EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
}

TEST(Summarise, RatesAndShape) {
    SweepRecord ok;
    ok.n = 10;
    ok.p = Rational(1, 2);
    ok.trees = 2;
    ok.valid = true;
    ok.outcome = "case2";
    SweepRecord bad = ok;
    bad.valid = false;
    bad.outcome = "error:property-failure:roots";

    auto single = summarise({ok});
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].success_rate(), 1.0);

    auto rows = summarise({ok, bad});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].trials, 2u);
    EXPECT_EQ(rows[0].errors, 1u);
    EXPECT_DOUBLE_EQ(rows[0].success_rate(), 0.5);
    EXPECT_DOUBLE_EQ(rows[0].valid_rate(), 0.5);
    EXPECT_DOUBLE_EQ(rows[0].mean_trees, 2.0);
    EXPECT_EQ(summary_of({ok, bad}), std::string(kSummaryCsvHeader) +
                                          "\n10,1,2,uniform,almost_cover,2,1,0.5000,0.5000,2.0000,0.0000,0,NA\n");

    // Too many uncovered vertices is a failure even when valid: 200/p = 400.
    SweepRecord loose = ok;
    loose.uncovered = 401;
    EXPECT_FALSE(loose.success());
    loose.uncovered = 400;
    EXPECT_TRUE(loose.success());
}

TEST(Summarise, SortedByCell) {
    auto cfg = small_config();
    auto records = run_sweep(cfg);
    std::reverse(records.begin(), records.end());
    auto rows = summarise(records);
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t k = 1; k < rows.size(); ++k)
        EXPECT_TRUE(rows[k - 1].n < rows[k].n || (rows[k - 1].n == rows[k].n && rows[k - 1].p < rows[k].p));
}

TEST(Csv, RoundTrip) {
    auto cfg = small_config();
    cfg.timing = true;
    auto records = run_sweep(cfg);
    std::istringstream in(csv_of(records));
    auto back = read_records_csv(in);
    EXPECT_EQ(csv_of(back), csv_of(records));
}

TEST(Csv, Errors) {
    std::istringstream bad_header("n,p\n1,2\n");
    EXPECT_THROW(read_records_csv(bad_header), ParseError);
    std::istringstream short_row(std::string(kSweepCsvHeader) + "\n1,2,3\n");
    try {
        read_records_csv(short_row);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream bad_value(std::string(kSweepCsvHeader) + "\nx,1,2,3,uniform,almost_cover,1,0,1,case1,0\n");
    EXPECT_THROW(read_records_csv(bad_value), ParseError);
}

TEST(Gnuplot, OneCurvePerN) {
    auto rows = summarise(run_sweep(small_config()));
    std::ostringstream out;
    write_gnuplot_script(out, "summary.csv", rows);
    const auto text = out.str();
    EXPECT_NE(text.find("n=40"), std::string::npos);
    EXPECT_NE(text.find("n=60"), std::string::npos);
    EXPECT_NE(text.find("'summary.csv'"), std::string::npos);
}

TEST(SweepTrends, Lower3SuccessAtLargeC) {
    SweepConfig cfg;
    cfg.n_values = {1000};
    cfg.c_values = {3.0, 6.0};
    cfg.trials = 15;
    cfg.source = ColouringSource::Lower3;
    auto rows = summarise(run_sweep(cfg));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_GE(rows[1].success_rate(), 0.9);
    EXPECT_GE(rows[1].success_rate() + 0.1, rows[0].success_rate());
}

TEST(SweepTrends, Lower4ConstructionImprovesWithN) {
    // Below the threshold (C = 0.25) the four-tree witness appears more often as n grows.
    std::vector<double> rates;
    for (std::size_t n : {200, 800}) {
        const Rational p = threshold_p(0.25, n);
        std::size_t ok = 0;
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto g = sample_bipartite({n, n, p}, Seed{s});
            try {
                ok += witness_holds(g, colour_lower4(g).witness);
            } catch (const ConstructionInfeasible&) {
            }
        }
        rates.push_back(static_cast<double>(ok) / 20);
    }
    EXPECT_GE(rates[1], rates[0]);
}
