#pragma once

// Naive reference implementations used as oracles, plus test-only colouring
// generators. Nothing here shares code with the library beyond the data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "monocover/monocover.hpp"

namespace mt {

using namespace monocover;

// Flat vertex numbering: V1 = 0..n1-1, V2 = n1..n1+n2-1.
inline std::size_t flat(const BipartiteGraph& g, VertexId v) { return v.part == Part::P1 ? v.index : g.n1() + v.index; }

inline VertexId unflat(const BipartiteGraph& g, std::size_t k) {
    return k < g.n1() ? VertexId{Part::P1, k} : VertexId{Part::P2, k - g.n1()};
}

/// Adjacency matrix over flat ids; colour -1 = any edge.
inline std::vector<std::vector<bool>> matrix(const BipartiteGraph& g, const TwoColouring* c, int colour) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < g.n1(); ++i)
        for (std::size_t j = 0; j < g.n2(); ++j) {
            if (!g.has_edge(i, j)) continue;
            if (colour >= 0 && static_cast<int>(c->colour(i, j)) != colour) continue;
            m[i][g.n1() + j] = m[g.n1() + j][i] = true;
        }
    return m;
}

inline bool naive_connected(const std::vector<std::vector<bool>>& m, const std::vector<std::size_t>& vs) {
    if (vs.empty()) return false;
    std::set<std::size_t> in(vs.begin(), vs.end()), seen{vs[0]};
    std::queue<std::size_t> q;
    q.push(vs[0]);
    while (!q.empty()) {
        auto x = q.front();
        q.pop();
        for (auto y : in)
            if (m[x][y] && seen.insert(y).second) q.push(y);
    }
    return seen.size() == in.size();
}

/// Independent cover validator: coverage by counting, tree-ness via BFS over the edge list.
inline bool naive_cover_ok(const BipartiteGraph& g, const TwoColouring& c, const TreeCover& cover) {
    const std::size_t n = g.vertex_count();
    std::vector<int> owner(n, 0);
    for (const auto& t : cover.trees) {
        std::vector<std::size_t> vs;
        t.vertices.for_each([&](VertexId v) { vs.push_back(flat(g, v)); });
        if (vs.empty()) return false;
        for (auto v : vs) ++owner[v];
        if (t.edges.size() + 1 != vs.size()) return false;
        std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
        std::set<std::size_t> in(vs.begin(), vs.end());
        for (const auto& e : t.edges) {
            if (e.i >= g.n1() || e.j >= g.n2() || !g.has_edge(e.i, e.j) || c.colour(e.i, e.j) != t.colour) return false;
            const std::size_t a = e.i, b = g.n1() + e.j;
            if (!in.count(a) || !in.count(b)) return false;
            m[a][b] = m[b][a] = true;
        }
        if (!naive_connected(m, vs)) return false;
    }
    cover.uncovered.for_each([&](VertexId v) { ++owner[flat(g, v)]; });
    return std::all_of(owner.begin(), owner.end(), [](int k) { return k == 1; });
}

/// All monochromatic components (singletons included) as flat-id sets, by BFS on matrices.
inline std::vector<std::pair<int, std::vector<std::size_t>>> naive_components(const BipartiteGraph& g, const TwoColouring& c) {
    std::vector<std::pair<int, std::vector<std::size_t>>> out;
    for (int col = 0; col < 2; ++col) {
        auto m = matrix(g, &c, col);
        std::vector<bool> seen(g.vertex_count(), false);
        for (std::size_t s = 0; s < g.vertex_count(); ++s) {
            if (seen[s]) continue;
            std::vector<std::size_t> comp{s};
            seen[s] = true;
            for (std::size_t k = 0; k < comp.size(); ++k)
                for (std::size_t y = 0; y < g.vertex_count(); ++y)
                    if (m[comp[k]][y] && !seen[y]) {
                        seen[y] = true;
                        comp.push_back(y);
                    }
            std::sort(comp.begin(), comp.end());
            out.push_back({col, comp});
        }
    }
    return out;
}

/// Minimum number of components covering V, by trying all subsets of size k = 1, 2, ...
inline std::size_t naive_tc(const BipartiteGraph& g, const TwoColouring& c) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return 0;
    auto comps = naive_components(g, c);
    std::vector<std::uint64_t> masks;
    for (auto& [col, vs] : comps) {
        std::uint64_t m = 0;
        for (auto v : vs) m |= std::uint64_t{1} << v;
        masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::function<bool(std::size_t, std::size_t, std::uint64_t)> pick = [&](std::size_t from, std::size_t left, std::uint64_t acc) {
        if (acc == full) return true;
        if (left == 0) return false;
        for (std::size_t k = from; k < masks.size(); ++k)
            if (pick(k + 1, left - 1, acc | masks[k])) return true;
        return false;
    };
    for (std::size_t k = 1;; ++k)
        if (pick(0, k, 0)) return k;
}

/// Minimum number of blocks over all set partitions of V whose blocks are each
/// connected in one colour (or singletons when allowed). Restricted growth strings.
inline std::size_t naive_tp(const BipartiteGraph& g, const TwoColouring& c, bool allow_singletons) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return 0;
    auto red = matrix(g, &c, 0), blue = matrix(g, &c, 1);
    auto block_ok = [&](const std::vector<std::size_t>& block) {
        if (block.size() == 1) return allow_singletons;
        return naive_connected(red, block) || naive_connected(blue, block);
    };
    std::size_t best = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t blocks) {
        if (blocks >= best) return;
        if (k == n) {
            for (std::size_t b = 0; b < blocks; ++b) {
                std::vector<std::size_t> block;
                for (std::size_t v = 0; v < n; ++v)
                    if (label[v] == b) block.push_back(v);
                if (!block_ok(block)) return;
            }
            best = blocks;
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            label[k] = b;
            rec(k + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return best;
}

inline std::pair<std::uint64_t, std::uint64_t> naive_pair_count(const BipartiteGraph& g) {
    std::uint64_t a = 0, b = 0;
    for (std::size_t u = 0; u < g.n1(); ++u)
        for (std::size_t v = u + 1; v < g.n1(); ++v) {
            bool common = false;
            for (std::size_t w = 0; w < g.n2() && !common; ++w) common = g.has_edge(u, w) && g.has_edge(v, w);
            if (!common) ++a;
        }
    for (std::size_t u = 0; u < g.n2(); ++u)
        for (std::size_t v = u + 1; v < g.n2(); ++v) {
            bool common = false;
            for (std::size_t w = 0; w < g.n1() && !common; ++w) common = g.has_edge(w, u) && g.has_edge(w, v);
            if (!common) ++b;
        }
    return {a, b};
}

/// Red iff (i < a) == (j < b), each edge flipped with probability q.
inline TwoColouring block_colouring(const BipartiteGraph& g, std::size_t a, std::size_t b, const Rational& q, Seed seed) {
    CounterRng rng(seed, "test-block");
    return TwoColouring(g, [&](std::size_t i, std::size_t j) {
        bool red = (i < a) == (j < b);
        if (rng.bernoulli(i * g.n2() + j, q)) red = !red;
        return red;
    });
}

inline BipartiteGraph graph_of(std::size_t n1, std::size_t n2, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Edge> es;
    for (auto [i, j] : edges) es.push_back({i, j});
    return BipartiteGraph::from_edges(n1, n2, es);
}

inline VertexId a(std::size_t i) { return {Part::P1, i}; }
inline VertexId b(std::size_t j) { return {Part::P2, j}; }

}  // namespace mt
