#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"

using namespace monocover;

TEST(SampleBipartite, ExtremeProbabilities) {
    auto empty = sample_bipartite({6, 9, Rational(0)}, Seed{1});
    EXPECT_EQ(empty.edge_count(), 0u);
    auto full = sample_bipartite({6, 9, Rational(1)}, Seed{1});
    EXPECT_EQ(full, BipartiteGraph::complete(6, 9));
}

TEST(SampleBipartite, InvalidParams) {
    EXPECT_THROW(sample_bipartite({0, 3, Rational(1, 2)}, Seed{}), std::invalid_argument);
    EXPECT_THROW(sample_bipartite({3, 3, Rational(3, 2)}, Seed{}), std::invalid_argument);
}

TEST(SampleBipartite, MeanEdgeCount) {
    const double n1 = 500, n2 = 500, p = 0.2;
    double sum = 0;
    for (std::uint64_t s = 0; s < 200; ++s) sum += static_cast<double>(sample_bipartite({500, 500, Rational(1, 5)}, Seed{s}).edge_count());
    const double mean = sum / 200, sd = std::sqrt(n1 * n2 * p * (1 - p));
    EXPECT_LT(std::abs(mean - 50000.0), 3 * sd);
}

TEST(SampleBipartite, DeterministicBytes) {
    for (std::uint64_t s : {0ull, 1ull, 77ull}) {
        auto g1 = sample_bipartite({40, 30, Rational(3, 10)}, Seed{s});
        auto g2 = sample_bipartite({40, 30, Rational(3, 10)}, Seed{s});
        EXPECT_EQ(graph_to_string(g1, TwoColouring(g1)), graph_to_string(g2, TwoColouring(g2)));
    }
    EXPECT_NE(sample_bipartite({40, 30, Rational(1, 2)}, Seed{1}), sample_bipartite({40, 30, Rational(1, 2)}, Seed{2}));
}

TEST(SampleBipartite, EdgeSlotsIndependent) {
    // 2x2 contingency of two fixed slots over 10000 seeds; chi-square (1 dof) critical value at 0.001 is 10.828.
    const std::size_t n = 6;
    const std::vector<std::pair<std::size_t, std::size_t>> slot_pairs = {{0, 1}, {0, 35}, {7, 8}, {14, 20}};
    std::vector<std::array<double, 4>> tables(slot_pairs.size(), {0, 0, 0, 0});
    for (std::uint64_t s = 0; s < 10000; ++s) {
        auto g = sample_bipartite({n, n, Rational(1, 2)}, Seed{s});
        for (std::size_t k = 0; k < slot_pairs.size(); ++k) {
            auto [x, y] = slot_pairs[k];
            const bool ex = g.has_edge(x / n, x % n), ey = g.has_edge(y / n, y % n);
            tables[k][2 * ex + ey] += 1;
        }
    }
    for (auto& t : tables) {
        const double total = t[0] + t[1] + t[2] + t[3];
        const double r0 = t[0] + t[1], r1 = t[2] + t[3], c0 = t[0] + t[2], c1 = t[1] + t[3];
        const double expected[4] = {r0 * c0 / total, r0 * c1 / total, r1 * c0 / total, r1 * c1 / total};
        double chi = 0;
        for (int i = 0; i < 4; ++i) chi += (t[i] - expected[i]) * (t[i] - expected[i]) / expected[i];
        EXPECT_LT(chi, 10.828);
    }
}

TEST(SampleColouring, ExtremesAndConcentration) {
    auto g = BipartiteGraph::complete(20, 20);
    EXPECT_EQ(sample_colouring(g, Rational(1), Seed{3}).edge_count(Colour::Red), 400u);
    EXPECT_EQ(sample_colouring(g, Rational(0), Seed{3}).edge_count(Colour::Blue), 400u);
    std::size_t within = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const double red = static_cast<double>(sample_colouring(g, Rational(1, 2), Seed{s}).edge_count(Colour::Red));
        if (std::abs(red - 200) <= 3 * std::sqrt(400 * 0.25)) ++within;
    }
    EXPECT_GE(within, 990u);
    EXPECT_THROW(sample_colouring(g, Rational(2), Seed{}), std::invalid_argument);
}

TEST(SampleColouring, EmptyGraph) {
    auto g = mt::graph_of(3, 3, {});
    EXPECT_EQ(sample_colouring(g, Rational(1, 2), Seed{}).edge_count(Colour::Red), 0u);
}

TEST(SampleMindeg, SpecExamples) {
    EXPECT_EQ(sample_mindeg_subgraph(10, Rational(1), Seed{4}), BipartiteGraph::complete(10, 10));
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto g = sample_mindeg_subgraph(64, Rational(13, 16) + Rational(1, 20), Seed{s});
        EXPECT_GE(g.min_degree(), 56u);
        EXPECT_LT(g.edge_count(), 64u * 64u);
    }
    std::size_t proper = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto g = sample_mindeg_subgraph(8, Rational(1, 2), Seed{s});
        EXPECT_GE(g.min_degree(), 4u);
        if (g != BipartiteGraph::complete(8, 8)) ++proper;
    }
    EXPECT_GE(proper, 90u);
}

TEST(SampleMindeg, DeletionIsMaximal) {
    // No remaining edge can be deleted without dropping an endpoint to the floor.
    auto g = sample_mindeg_subgraph(30, Rational(2, 3), Seed{11});
    for (const auto& e : g.edges())
        EXPECT_TRUE(g.degree({Part::P1, e.i}) <= 20 || g.degree({Part::P2, e.j}) <= 20);
}

TEST(CounterRng, BernoulliEdgesAndStreams) {
    CounterRng rng(Seed{1}, "x");
    for (std::uint64_t k = 0; k < 1000; ++k) {
        EXPECT_TRUE(rng.bernoulli(k, Rational(1)));
        EXPECT_FALSE(rng.bernoulli(k, Rational(0)));
    }
    EXPECT_NE(CounterRng(Seed{1}, "x").at(0), CounterRng(Seed{1}, "y").at(0));
    EXPECT_NE(rng.derive(0).at(5), rng.derive(1).at(5));
    EXPECT_EQ(rng.at(42), CounterRng(Seed{1}, "x").at(42));
}

TEST(TrialSeed, DistinctAcrossCells) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t n : {100, 200})
        for (std::uint64_t p = 0; p < 4; ++p)
            for (std::uint64_t t = 0; t < 50; ++t) seen.insert(trial_seed(Seed{3}, n, p, t).value);
    EXPECT_EQ(seen.size(), 400u);
}
