#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "monocover/errors.hpp"
#include "monocover/graph.hpp"

namespace monocover {

/// Roots of the three-tree lower bound: r in V1, b in V2 with rb not an edge.
struct Lower3Witness {
    VertexId r;
    VertexId b;
    VertexSet X;  // V1 \ (N(b) ∪ {r})
    VertexSet Y;  // V2 \ (N(r) ∪ {b})
};

struct Lower4Witness {
    VertexId u1, v1;  // in V1
    VertexId u2, v2;  // in V2
};

struct Lower3Result {
    TwoColouring colouring;
    Lower3Witness witness;
};

struct Lower4Result {
    TwoColouring colouring;
    Lower4Witness witness;
};

struct BlowupResult {
    BipartiteGraph graph;
    RColouring colouring;
};

inline bool witness_holds(const BipartiteGraph& g, const Lower3Witness& w) {
    if (w.r.part != Part::P1 || w.b.part != Part::P2 || !g.valid(w.r) || !g.valid(w.b)) return false;
    if (g.has_edge(w.r.index, w.b.index)) return false;
    Bitset x = g.neighbours(w.b).complement();
    x.reset(w.r.index);
    Bitset y = g.neighbours(w.r).complement();
    y.reset(w.b.index);
    return x.any() && y.any() && w.X == VertexSet::on_side(g.n1(), g.n2(), Part::P1, x) &&
           w.Y == VertexSet::on_side(g.n1(), g.n2(), Part::P2, y);
}

inline bool witness_holds(const BipartiteGraph& g, const Lower4Witness& w) {
    for (auto v : {w.u1, w.v1})
        if (v.part != Part::P1 || !g.valid(v)) return false;
    for (auto v : {w.u2, w.v2})
        if (v.part != Part::P2 || !g.valid(v)) return false;
    if (w.u1 == w.v1 || w.u2 == w.v2) return false;
    if (g.neighbours(w.u1).intersects(g.neighbours(w.v1))) return false;
    if (g.neighbours(w.u2).intersects(g.neighbours(w.v2))) return false;
    Bitset hit = g.neighbours(w.u1) | g.neighbours(w.v1);
    return !hit.test(w.u2.index) && !hit.test(w.v2.index);
}

/// Colouring with no cover by two monochromatic components. Red: r–N(r),
/// X–N(r), Y–N(b). Blue: b–N(b), N(r)–N(b), X–Y. r is the lowest V1 vertex
/// admitting a partner, b its lowest partner.
inline Lower3Result colour_lower3(const BipartiteGraph& g) {
    const std::size_t n1 = g.n1(), n2 = g.n2();
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("both parts must be nonempty");
    for (std::size_t r = 0; r < n1; ++r) {
        const Bitset& nr = g.neighbours({Part::P1, r});
        Bitset y_base = nr.complement();
        if (y_base.count() < 2) continue;  // Y = V2 \ (N(r) ∪ {b}) would be empty
        for (std::size_t b = y_base.find_first(); b != Bitset::npos; b = y_base.find_next(b)) {
            const Bitset& nb = g.neighbours({Part::P2, b});
            Bitset x = nb.complement();
            x.reset(r);
            if (x.none()) continue;
            Bitset y = y_base;
            y.reset(b);
            TwoColouring colouring(g, [&](std::size_t i, std::size_t j) {
                const bool i_in_nb = nb.test(i), j_in_nr = nr.test(j);
                if (i == r) {
                    if (j_in_nr) return true;
                } else if (i_in_nb) {
                    if (j == b || j_in_nr) return false;
                    return true;  // N(b)–Y
                } else {          // i in X
                    if (j_in_nr) return true;
                    if (y.test(j)) return false;
                }
                throw std::logic_error("lower3 colouring: edge outside every rule");
            });
            Lower3Witness w{{Part::P1, r}, {Part::P2, b}, VertexSet::on_side(n1, n2, Part::P1, std::move(x)),
                            VertexSet::on_side(n1, n2, Part::P2, std::move(y))};
            return {std::move(colouring), std::move(w)};
        }
    }
    throw ConstructionInfeasible("lower3: no vertex r in V1 with a valid non-neighbour b");
}

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> disjoint_neighbourhood_pairs(const std::vector<Bitset>& rows) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < rows.size(); ++u)
        for (std::size_t v = u + 1; v < rows.size(); ++v)
            if (!rows[u].intersects(rows[v])) out.emplace_back(u, v);
    return out;
}

}  // namespace detail

/// Red on every edge at u1, v1, u2, v2; blue elsewhere. The four vertices lie
/// in distinct red components and in no blue one, forcing four components.
/// Pairs are scanned lexicographically: the first V1 pair admitting a V2 pair wins.
inline Lower4Result colour_lower4(const BipartiteGraph& g) {
    const AdjacencyView adj = g.view();
    auto pairs1 = detail::disjoint_neighbourhood_pairs(adj.rows(Part::P1));
    if (pairs1.empty()) throw ConstructionInfeasible("lower4: no pair in V1 without common neighbours");
    auto pairs2 = detail::disjoint_neighbourhood_pairs(adj.rows(Part::P2));
    for (auto [u1, v1] : pairs1) {
        Bitset hit = adj.rows(Part::P1)[u1] | adj.rows(Part::P1)[v1];
        for (auto [u2, v2] : pairs2) {
            if (hit.test(u2) || hit.test(v2)) continue;
            TwoColouring colouring(g, [&](std::size_t i, std::size_t j) {
                return i == u1 || i == v1 || j == u2 || j == v2;
            });
            return {std::move(colouring), {{Part::P1, u1}, {Part::P1, v1}, {Part::P2, u2}, {Part::P2, v2}}};
        }
    }
    throw ConstructionInfeasible("lower4: no pair in V2 \\ (N(u1) ∪ N(v1)) without common neighbours");
}

/// Two disjoint copies of K_{n/2,n/2} inside K_{n,n}; in each copy both sides
/// split into r equal groups and the edges between group i and group j get
/// colour (i + j) mod r.
inline BlowupResult colour_blowup_pair(std::size_t n, unsigned r) {
    if (r < 2) throw std::invalid_argument("blow-up needs at least two colours");
    if (n == 0 || n % (2 * r) != 0) throw std::invalid_argument("n must be a positive multiple of 2r");
    const std::size_t half = n / 2, group = half / r;
    GraphBuilder b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i / half == j / half) b.add_edge(i, j);
    BipartiteGraph g = std::move(b).build();
    RColouring c(g, r);
    for (const auto& e : g.edges())
        c.set(e.i, e.j, static_cast<unsigned>(((e.i % half) / group + (e.j % half) / group) % r));
    return {std::move(g), std::move(c)};
}

}  // namespace monocover
