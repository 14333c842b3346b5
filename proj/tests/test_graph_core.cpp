#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace monocover;
using mt::a;
using mt::b;

namespace {

BipartiteGraph matching3() { return mt::graph_of(3, 3, {{0, 0}, {1, 1}, {2, 2}}); }

TwoColouring matching3_colouring(const BipartiteGraph& g) {
    return TwoColouring(g, [](std::size_t i, std::size_t) { return i == 0; });
}

VertexSet set_of(const BipartiteGraph& g, std::vector<VertexId> vs) { return VertexSet::of(g.n1(), g.n2(), vs); }

}  // namespace

TEST(Bitset, BasicOperations) {
    Bitset s(130);
    EXPECT_TRUE(s.none());
    s.set(0);
    s.set(64);
    s.set(129);
    EXPECT_EQ(s.count(), 3u);
    EXPECT_EQ(s.find_first(), 0u);
    EXPECT_EQ(s.find_next(0), 64u);
    EXPECT_EQ(s.find_next(64), 129u);
    EXPECT_EQ(s.find_next(129), Bitset::npos);
    Bitset c = s.complement();
    EXPECT_EQ(c.count(), 127u);
    EXPECT_FALSE(c.intersects(s));
    EXPECT_EQ((c | s).count(), 130u);
    EXPECT_EQ(s.lowest(2).to_vector(), (std::vector<std::size_t>{0, 64}));
    EXPECT_THROW(s &= Bitset(10), std::invalid_argument);
}

TEST(Bitset, IntersectCountMatchesNaive) {
    CounterRng rng(Seed{5}, "bits");
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(trial, 300);
        Bitset x(n), y(n), z(n);
        std::size_t two = 0, three = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool bx = rng.coin(1000 * trial + 3 * i), by = rng.coin(1000 * trial + 3 * i + 1),
                       bz = rng.coin(1000 * trial + 3 * i + 2);
            if (bx) x.set(i);
            if (by) y.set(i);
            if (bz) z.set(i);
            two += bx && by;
            three += bx && by && bz;
        }
        EXPECT_EQ(Bitset::intersect_count(x, y), two);
        EXPECT_EQ(Bitset::intersect_count(x, y, z), three);
    }
}

TEST(Rational, ParseAndCompare) {
    EXPECT_EQ(Rational::parse("0.05"), Rational(1, 20));
    EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).str(), "1/2");
    EXPECT_EQ(Rational(7, 2).floor(), 3);
    EXPECT_EQ(Rational(7, 2).ceil(), 4);
    EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
}

TEST(Rational, ThresholdCountsAreExact) {
    // 400 * |S| >= p^2 n evaluated without rounding: p = 1/2, n = 1000 gives 0.625.
    const Rational t = Rational(1, 2) * Rational(1, 2) * Rational(1000) / Rational(400);
    EXPECT_FALSE(count_at_least(0, t));
    EXPECT_TRUE(count_at_least(1, t));
    EXPECT_TRUE(count_at_least(5, Rational(5)));
    EXPECT_FALSE(count_greater(5, Rational(5)));
    EXPECT_TRUE(count_at_most(5, Rational(5)));
}

TEST(Degree, SpecExamples) {
    auto k22 = BipartiteGraph::complete(2, 2);
    EXPECT_EQ(degree(k22, a(0)), 2u);
    BipartiteGraph empty = mt::graph_of(4, 4, {});
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(degree(empty, a(i)), 0u);
    auto m = matching3();
    EXPECT_EQ(degree(m, a(0), set_of(m, {b(1), b(2)})), 0u);
    EXPECT_EQ(degree(m, a(0), set_of(m, {b(0), b(2)})), 1u);
}

TEST(Degree, PartMismatchIsInvalidArgument) {
    auto m = matching3();
    EXPECT_THROW(degree(m, a(0), set_of(m, {a(1)})), std::invalid_argument);
}

TEST(Degree, ColouredDegrees) {
    auto m = matching3();
    auto c = matching3_colouring(m);
    EXPECT_EQ(degree(c, Colour::Red, a(0)), 1u);
    EXPECT_EQ(degree(c, Colour::Blue, a(0)), 0u);
    EXPECT_EQ(degree(c, Colour::Blue, b(1)), 1u);
}

TEST(EdgeCountBetween, SpecExamples) {
    auto k33 = BipartiteGraph::complete(3, 3);
    auto all = k33.all_vertices();
    VertexSet v1 = VertexSet::on_side(3, 3, Part::P1, Bitset::full(3));
    VertexSet v2 = VertexSet::on_side(3, 3, Part::P2, Bitset::full(3));
    EXPECT_EQ(edge_count_between(k33, v1, v2), 9u);
    EXPECT_EQ(edge_count_between(k33, VertexSet(3, 3), v2), 0u);
    auto m = matching3();
    EXPECT_EQ(edge_count_between(m, set_of(m, {a(0), a(1)}), set_of(m, {b(0), b(1)})), 2u);
    EXPECT_THROW(edge_count_between(k33, v1, v1), std::invalid_argument);
    EXPECT_THROW(edge_count_between(k33, all, v2), std::invalid_argument);
}

TEST(EdgeCountBetween, UncolouredIsSumOfColours) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto g = sample_bipartite({12, 9, Rational(1, 2)}, Seed{s});
        auto c = sample_colouring(g, Rational(1, 3), Seed{s});
        CounterRng rng(Seed{s}, "sets");
        Bitset x(12), y(9);
        for (std::size_t i = 0; i < 12; ++i)
            if (rng.coin(i)) x.set(i);
        for (std::size_t j = 0; j < 9; ++j)
            if (rng.coin(100 + j)) y.set(j);
        auto A = VertexSet::on_side(12, 9, Part::P1, x), B = VertexSet::on_side(12, 9, Part::P2, y);
        EXPECT_EQ(edge_count_between(g, A, B),
                  edge_count_between(c, Colour::Red, A, B) + edge_count_between(c, Colour::Blue, A, B));
        EXPECT_EQ(edge_count_between(g, A, B), edge_count_between(g, B, A));
    }
}

TEST(MonochromaticComponents, AllRed) {
    auto g = BipartiteGraph::complete(3, 4);
    auto c = TwoColouring::monochrome(g, Colour::Red);
    auto red = monochromatic_components(c, Colour::Red);
    ASSERT_EQ(red.size(), 1u);
    EXPECT_EQ(red[0], g.all_vertices());
    EXPECT_EQ(monochromatic_components(c, Colour::Blue).size(), 7u);
}

TEST(MonochromaticComponents, MatchingGraph) {
    auto m = matching3();
    auto c = matching3_colouring(m);
    auto red = monochromatic_components(c, Colour::Red);
    auto blue = monochromatic_components(c, Colour::Blue);
    std::multiset<std::size_t> red_sizes, blue_sizes;
    for (auto& s : red) red_sizes.insert(s.count());
    for (auto& s : blue) blue_sizes.insert(s.count());
    EXPECT_EQ(red_sizes, (std::multiset<std::size_t>{2, 1, 1, 1, 1}));
    EXPECT_EQ(blue_sizes, (std::multiset<std::size_t>{2, 2, 1, 1}));
    EXPECT_TRUE(std::find(red.begin(), red.end(), set_of(m, {a(0), b(0)})) != red.end());
    EXPECT_TRUE(std::find(blue.begin(), blue.end(), set_of(m, {a(1), b(1)})) != blue.end());
    EXPECT_TRUE(std::find(blue.begin(), blue.end(), set_of(m, {a(2), b(2)})) != blue.end());
}

TEST(MonochromaticComponents, EmptyGraphAllSingletons) {
    auto g = mt::graph_of(3, 2, {});
    TwoColouring c(g);
    EXPECT_EQ(monochromatic_components(c, Colour::Red).size(), 5u);
    EXPECT_EQ(monochromatic_components(c, Colour::Blue).size(), 5u);
}

TEST(MonochromaticComponents, PartitionVertexSetAndMatchNaive) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        auto g = sample_bipartite({1 + s % 7, 1 + (s * 3) % 8, Rational(2, 5)}, Seed{s});
        auto c = sample_colouring(g, Rational(1, 2), Seed{s + 1});
        auto naive = mt::naive_components(g, c);
        for (Colour col : {Colour::Red, Colour::Blue}) {
            auto comps = monochromatic_components(c, col);
            VertexSet seen(g.n1(), g.n2());
            std::set<std::vector<std::size_t>> got, want;
            for (auto& comp : comps) {
                EXPECT_FALSE(comp.intersects(seen));
                seen |= comp;
                std::vector<std::size_t> flat;
                comp.for_each([&](VertexId v) { flat.push_back(mt::flat(g, v)); });
                std::sort(flat.begin(), flat.end());
                got.insert(flat);
            }
            EXPECT_EQ(seen, g.all_vertices());
            for (auto& [k, vs] : naive)
                if (k == static_cast<int>(col)) want.insert(vs);
            EXPECT_EQ(got, want);
        }
    }
}

TEST(SpanningTree, SpecExamples) {
    auto path = mt::graph_of(2, 1, {{0, 0}, {1, 0}});
    auto red = TwoColouring::monochrome(path, Colour::Red);
    auto single = spanning_tree_of(red, Colour::Red, set_of(path, {a(0)}));
    EXPECT_TRUE(single.edges.empty());
    EXPECT_EQ(single.vertices.count(), 1u);
    auto t = spanning_tree_of(red, Colour::Red, path.all_vertices());
    EXPECT_EQ(t.edges.size(), 2u);

    auto c4 = BipartiteGraph::complete(2, 2);
    auto rc4 = TwoColouring::monochrome(c4, Colour::Red);
    auto t4 = spanning_tree_of(rc4, Colour::Red, c4.all_vertices());
    EXPECT_EQ(t4.edges.size(), 3u);
    EXPECT_EQ(t4.vertices, c4.all_vertices());
    TreeCover cover{{t4}, VertexSet(2, 2)};
    EXPECT_TRUE(validate_cover(c4, rc4, cover).ok());
}

TEST(SpanningTree, DisconnectedThrows) {
    auto m = matching3();
    auto c = TwoColouring::monochrome(m, Colour::Red);
    EXPECT_THROW(spanning_tree_of(c, Colour::Red, set_of(m, {a(0), a(1)})), NotConnectedError);
    EXPECT_THROW(spanning_tree_of(c, Colour::Blue, set_of(m, {a(0), b(0)})), NotConnectedError);
}

TEST(SpanningTree, AlwaysValidOnComponents) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto g = sample_bipartite({9, 11, Rational(3, 10)}, Seed{s});
        auto c = sample_colouring(g, Rational(1, 2), Seed{s});
        for (Colour col : {Colour::Red, Colour::Blue})
            for (auto& comp : monochromatic_components(c, col)) {
                auto t = spanning_tree_of(c, col, comp);
                EXPECT_EQ(t.vertices, comp);
                TreeCover cover{{t}, g.all_vertices() - comp};
                EXPECT_TRUE(validate_cover(g, c, cover).ok());
                EXPECT_TRUE(mt::naive_cover_ok(g, c, cover));
            }
    }
}

TEST(ValidateCover, SpecExamples) {
    auto g = BipartiteGraph::complete(2, 2);
    auto c = TwoColouring::monochrome(g, Colour::Red);
    auto tree = spanning_tree_of(c, Colour::Red, g.all_vertices());
    EXPECT_TRUE(validate_cover(g, c, {{tree}, VertexSet(2, 2)}).ok());

    auto t1 = spanning_tree_of(c, Colour::Red, set_of(g, {a(0), b(0), b(1)}));
    auto t2 = spanning_tree_of(c, Colour::Red, set_of(g, {a(1), b(1)}));
    auto overlap = validate_cover(g, c, {{t1, t2}, VertexSet(2, 2)});
    EXPECT_TRUE(overlap.has(ViolationKind::Overlap));

    MonoTree broken = tree;
    broken.edges.pop_back();
    auto bad = validate_cover(g, c, {{broken}, VertexSet(2, 2)});
    EXPECT_TRUE(bad.has(ViolationKind::NotATree));
}

TEST(ValidateCover, WrongColourAndCoverage) {
    auto g = BipartiteGraph::complete(2, 2);
    auto c = TwoColouring::monochrome(g, Colour::Red);
    auto tree = spanning_tree_of(c, Colour::Red, set_of(g, {a(0), b(0), b(1)}));
    MonoTree blue = tree;
    blue.colour = Colour::Blue;
    EXPECT_TRUE(validate_cover(g, c, {{blue}, set_of(g, {a(1)})}).has(ViolationKind::WrongColour));
    EXPECT_TRUE(validate_cover(g, c, {{tree}, VertexSet(2, 2)}).has(ViolationKind::Coverage));
    EXPECT_TRUE(validate_cover(g, c, {{tree}, set_of(g, {a(1)})}).ok());
}

TEST(ValidateCover, AgreesWithNaiveValidatorUnderMutation) {
    std::size_t accepted = 0, rejected = 0;
    for (std::uint64_t s = 0; s < 600; ++s) {
        CounterRng rng(Seed{s}, "mutate");
        const std::size_t n1 = 1 + rng.below(0, 6), n2 = 1 + rng.below(1, 6);
        auto g = sample_bipartite({n1, n2, Rational(1, 2)}, Seed{s});
        auto c = sample_colouring(g, Rational(1, 2), Seed{s});
        TreeCover cover;
        cover.uncovered = VertexSet(n1, n2);
        VertexSet left = g.all_vertices();
        for (Colour col : {Colour::Red, Colour::Blue})
            for (auto& comp : monochromatic_components(c, col)) {
                if (comp.intersects(g.all_vertices() - left) || comp.count() < 2 || cover.trees.size() >= 3) continue;
                cover.trees.push_back(spanning_tree_of(c, col, comp));
                left -= comp;
            }
        cover.uncovered = left;
        switch (rng.below(2, 7)) {
            case 0: break;
            case 1:
                if (!cover.trees.empty() && !cover.trees[0].edges.empty()) cover.trees[0].edges.pop_back();
                break;
            case 2:
                if (!cover.trees.empty()) cover.trees[0].colour = swap_colour(cover.trees[0].colour);
                break;
            case 3:
                if (!cover.uncovered.empty()) cover.uncovered.erase(cover.uncovered.to_vector().front());
                break;
            case 4:
                if (!cover.trees.empty() && !cover.trees[0].edges.empty())
                    cover.trees[0].edges.push_back(cover.trees[0].edges.front());
                break;
            case 5:
                if (cover.trees.size() > 1) cover.trees[1].vertices |= cover.trees[0].vertices;
                break;
            case 6:
                if (!cover.uncovered.empty()) {
                    auto v = cover.uncovered.to_vector().front();
                    cover.trees.push_back({Colour::Red, VertexSet::of(n1, n2, std::vector<VertexId>{v}), {}});
                    cover.uncovered.erase(v);
                }
                break;
        }
        const bool mine = validate_cover(g, c, cover).ok();
        EXPECT_EQ(mine, mt::naive_cover_ok(g, c, cover)) << "seed " << s;
        (mine ? accepted : rejected)++;
    }
    EXPECT_GT(accepted, 50u);
    EXPECT_GT(rejected, 50u);
}

TEST(ValidatePartition, SpecExamples) {
    auto g = BipartiteGraph::complete(3, 3);
    auto c = TwoColouring::monochrome(g, Colour::Blue);
    MonoPartition good{{{Colour::Blue, g.all_vertices()}}};
    EXPECT_TRUE(validate_partition(g, c, good).ok());
    MonoPartition missing{{{Colour::Blue, g.all_vertices() - set_of(g, {a(0)})}}};
    EXPECT_TRUE(validate_partition(g, c, missing).has(ViolationKind::Coverage));
    auto m = matching3();
    auto mc = TwoColouring::monochrome(m, Colour::Blue);
    MonoPartition split{{{Colour::Blue, set_of(m, {a(0), b(0), a(1), b(1)})}, {Colour::Blue, set_of(m, {a(2), b(2)})}}};
    EXPECT_TRUE(validate_partition(m, mc, split).has(ViolationKind::Disconnected));
    MonoPartition red_parts{{{Colour::Red, set_of(m, {a(0), b(0)})}, {Colour::Blue, set_of(m, {a(1), b(1), a(2), b(2)})}}};
    EXPECT_TRUE(validate_partition(m, mc, red_parts).has(ViolationKind::Disconnected));
}

TEST(TextFormat, RoundTripAndDeterminism) {
    auto g = sample_bipartite({7, 5, Rational(1, 2)}, Seed{9});
    auto c = sample_colouring(g, Rational(1, 2), Seed{9});
    const std::string text = graph_to_string(g, c, {"seed 9"});
    EXPECT_EQ(text.rfind("bipartite 7 5\n", 0), 0u);
    auto back = read_graph_string(text);
    EXPECT_EQ(back.graph, g);
    EXPECT_EQ(back.two_colouring(), c);
    EXPECT_EQ(graph_to_string(back.graph, back.two_colouring(), {"seed 9"}), text);
}

TEST(TextFormat, RejectsMalformedInput) {
    EXPECT_THROW(read_graph_string("bipartite 2 2\n0 0 R\n0 0 B\n"), ParseError);
    EXPECT_THROW(read_graph_string("bipartite 2 2\n0 2 R\n"), ParseError);
    EXPECT_THROW(read_graph_string("bipartite 2 2\n0 0 R\n1 1\n"), ParseError);
    EXPECT_THROW(read_graph_string("graph 2 2\n"), ParseError);
    EXPECT_THROW(read_graph_string("bipartite 2 2\n0 0 G\n"), ParseError);
    auto ok = read_graph_string("# comment\nbipartite 2 2\n\n0 0 R # trailing\n1 1 B\n");
    EXPECT_EQ(ok.graph.edge_count(), 2u);
    EXPECT_EQ(ok.two_colouring().colour(1, 1), Colour::Blue);
}

TEST(TextFormat, CoverAndPartitionRoundTrip) {
    auto g = sample_bipartite({30, 30, Rational(1, 2)}, Seed{4});
    auto c = colour_lower3(g).colouring;
    auto [cover, state] = almost_cover(g, c, CoverParams{Rational(1, 2), Rational(1, 10), 16, Seed{4}});
    std::stringstream ss;
    write_cover(ss, cover);
    auto back = read_cover(ss, g.n1(), g.n2());
    EXPECT_TRUE(validate_cover(g, c, back).ok());
    EXPECT_EQ(back.trees.size(), cover.trees.size());
    EXPECT_EQ(back.uncovered, cover.uncovered);

    auto k = BipartiteGraph::complete(4, 4);
    auto kc = sample_colouring(k, Rational(1, 2), Seed{1});
    MonoPartition p;
    for (auto& comp : monochromatic_components(kc, Colour::Red)) p.parts.push_back({Colour::Red, comp});
    std::stringstream ps;
    write_partition(ps, p);
    auto pback = read_partition(ps, 4, 4);
    ASSERT_EQ(pback.parts.size(), p.parts.size());
    EXPECT_TRUE(validate_partition(k, kc, pback).ok());
}
