#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monocover/bitset.hpp"

namespace monocover {

enum class Part : std::uint8_t { P1 = 0, P2 = 1 };

constexpr Part opposite(Part p) noexcept { return p == Part::P1 ? Part::P2 : Part::P1; }
constexpr int part_number(Part p) noexcept { return p == Part::P1 ? 1 : 2; }

struct VertexId {
    Part part = Part::P1;
    std::size_t index = 0;

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline std::string to_string(VertexId v) { return std::to_string(part_number(v.part)) + ":" + std::to_string(v.index); }

enum class Colour : std::uint8_t { Red = 0, Blue = 1 };

constexpr Colour swap_colour(Colour c) noexcept { return c == Colour::Red ? Colour::Blue : Colour::Red; }
constexpr char colour_char(Colour c) noexcept { return c == Colour::Red ? 'R' : 'B'; }
inline std::string to_string(Colour c) { return c == Colour::Red ? "red" : "blue"; }

/// Edge between V1-index `i` and V2-index `j`.
struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// The edge joining two vertices from opposite parts.
inline Edge edge_between(VertexId a, VertexId b) {
    if (a.part == b.part) throw std::invalid_argument("edge endpoints must lie in opposite parts");
    return a.part == Part::P1 ? Edge{a.index, b.index} : Edge{b.index, a.index};
}

/// Subset of V(G), stored as one bit set per part.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::size_t n1, std::size_t n2) : sides_{Bitset(n1), Bitset(n2)} {}
    VertexSet(Bitset side1, Bitset side2) : sides_{std::move(side1), std::move(side2)} {}

    static VertexSet all(std::size_t n1, std::size_t n2) { return {Bitset::full(n1), Bitset::full(n2)}; }
    /// A set living entirely in part `p`.
    static VertexSet on_side(std::size_t n1, std::size_t n2, Part p, Bitset bits) {
        VertexSet s(n1, n2);
        s.side(p) = std::move(bits);
        return s;
    }
    template <class Range>
    static VertexSet of(std::size_t n1, std::size_t n2, const Range& vertices) {
        VertexSet s(n1, n2);
        for (const VertexId& v : vertices) s.insert(v);
        return s;
    }

    std::size_t n1() const noexcept { return sides_[0].size(); }
    std::size_t n2() const noexcept { return sides_[1].size(); }

    const Bitset& side(Part p) const noexcept { return sides_[static_cast<int>(p)]; }
    Bitset& side(Part p) noexcept { return sides_[static_cast<int>(p)]; }

    bool contains(VertexId v) const { return in_range(v) && side(v.part).test(v.index); }
    void insert(VertexId v) {
        require(v);
        side(v.part).set(v.index);
    }
    void erase(VertexId v) {
        require(v);
        side(v.part).reset(v.index);
    }
    std::size_t count() const noexcept { return sides_[0].count() + sides_[1].count(); }
    bool empty() const noexcept { return sides_[0].none() && sides_[1].none(); }

    bool in_range(VertexId v) const noexcept { return v.index < side(v.part).size(); }

    VertexSet& operator|=(const VertexSet& o) {
        sides_[0] |= o.sides_[0];
        sides_[1] |= o.sides_[1];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        sides_[0] &= o.sides_[0];
        sides_[1] &= o.sides_[1];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        sides_[0] -= o.sides_[0];
        sides_[1] -= o.sides_[1];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    bool operator==(const VertexSet& o) const = default;

    bool intersects(const VertexSet& o) const {
        return sides_[0].intersects(o.sides_[0]) || sides_[1].intersects(o.sides_[1]);
    }

    /// Visits V1 vertices first, each part in increasing index order.
    template <class F>
    void for_each(F&& f) const {
        sides_[0].for_each([&](std::size_t i) { f(VertexId{Part::P1, i}); });
        sides_[1].for_each([&](std::size_t i) { f(VertexId{Part::P2, i}); });
    }
    std::vector<VertexId> to_vector() const {
        std::vector<VertexId> out;
        out.reserve(count());
        for_each([&](VertexId v) { out.push_back(v); });
        return out;
    }

private:
    void require(VertexId v) const {
        if (!in_range(v)) throw std::out_of_range("vertex " + to_string(v) + " out of range");
    }

    std::array<Bitset, 2> sides_;
};

/// Adjacency rows of one bipartite edge set: rows(P1)[i] is a bit set over V2.
struct AdjacencyView {
    const std::vector<Bitset>* rows1 = nullptr;
    const std::vector<Bitset>* rows2 = nullptr;

    std::size_t n1() const noexcept { return rows1->size(); }
    std::size_t n2() const noexcept { return rows2->size(); }
    const std::vector<Bitset>& rows(Part p) const noexcept { return p == Part::P1 ? *rows1 : *rows2; }
    const Bitset& row(VertexId v) const { return rows(v.part)[v.index]; }
};

class BipartiteGraph;

/// Accumulates edges, then freezes them into an immutable BipartiteGraph.
class GraphBuilder {
public:
    GraphBuilder(std::size_t n1, std::size_t n2) : rows1_(n1, Bitset(n2)), rows2_(n2, Bitset(n1)) {}

    /// Returns false if the edge was already present.
    bool add_edge(std::size_t i, std::size_t j) {
        if (i >= rows1_.size() || j >= rows2_.size())
            throw std::out_of_range("edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        if (rows1_[i].test(j)) return false;
        rows1_[i].set(j);
        rows2_[j].set(i);
        return true;
    }
    void remove_edge(std::size_t i, std::size_t j) {
        rows1_[i].reset(j);
        rows2_[j].reset(i);
    }
    bool has_edge(std::size_t i, std::size_t j) const { return rows1_[i].test(j); }
    std::size_t degree(VertexId v) const {
        return (v.part == Part::P1 ? rows1_[v.index] : rows2_[v.index]).count();
    }

    BipartiteGraph build() &&;

private:
    std::vector<Bitset> rows1_;
    std::vector<Bitset> rows2_;
};

/// Immutable bipartite graph with parts V1 = {0..n1-1}, V2 = {0..n2-1}.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(std::size_t n1, std::size_t n2) : rows1_(n1, Bitset(n2)), rows2_(n2, Bitset(n1)) {}

    static BipartiteGraph complete(std::size_t n1, std::size_t n2) {
        BipartiteGraph g;
        g.rows1_.assign(n1, Bitset::full(n2));
        g.rows2_.assign(n2, Bitset::full(n1));
        return g;
    }
    static BipartiteGraph from_edges(std::size_t n1, std::size_t n2, const std::vector<Edge>& edges) {
        GraphBuilder b(n1, n2);
        for (const auto& e : edges) b.add_edge(e.i, e.j);
        return std::move(b).build();
    }

    std::size_t n1() const noexcept { return rows1_.size(); }
    std::size_t n2() const noexcept { return rows2_.size(); }
    std::size_t part_size(Part p) const noexcept { return p == Part::P1 ? n1() : n2(); }
    std::size_t vertex_count() const noexcept { return n1() + n2(); }
    bool balanced() const noexcept { return n1() == n2(); }

    bool has_edge(std::size_t i, std::size_t j) const { return i < n1() && j < n2() && rows1_[i].test(j); }
    bool has_edge(Edge e) const { return has_edge(e.i, e.j); }
    bool valid(VertexId v) const noexcept { return v.index < part_size(v.part); }

    /// Neighbours of `v`, as a bit set over the opposite part.
    const Bitset& neighbours(VertexId v) const { return view().row(v); }
    std::size_t degree(VertexId v) const { return neighbours(v).count(); }

    std::size_t edge_count() const noexcept {
        std::size_t m = 0;
        for (const auto& r : rows1_) m += r.count();
        return m;
    }
    /// Row-major over (V1 index, V2 index).
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (std::size_t i = 0; i < n1(); ++i) rows1_[i].for_each([&](std::size_t j) { out.push_back({i, j}); });
        return out;
    }
    std::size_t min_degree() const noexcept {
        std::size_t best = static_cast<std::size_t>(-1);
        for (const auto& r : rows1_) best = std::min(best, r.count());
        for (const auto& r : rows2_) best = std::min(best, r.count());
        return vertex_count() == 0 ? 0 : best;
    }

    AdjacencyView view() const noexcept { return {&rows1_, &rows2_}; }
    VertexSet all_vertices() const { return VertexSet::all(n1(), n2()); }

    bool operator==(const BipartiteGraph&) const = default;

private:
    friend class GraphBuilder;
    std::vector<Bitset> rows1_;
    std::vector<Bitset> rows2_;
};

inline BipartiteGraph GraphBuilder::build() && {
    BipartiteGraph g;
    g.rows1_ = std::move(rows1_);
    g.rows2_ = std::move(rows2_);
    return g;
}

/// Red/blue label on every edge of a graph. The red and blue rows partition
/// the adjacency rows, so the colouring is total by construction.
class TwoColouring {
public:
    TwoColouring() = default;

    /// All edges blue.
    explicit TwoColouring(const BipartiteGraph& g) : TwoColouring(g, [](std::size_t, std::size_t) { return false; }) {}

    template <class IsRed>
    TwoColouring(const BipartiteGraph& g, IsRed&& is_red) {
        const std::size_t n1 = g.n1(), n2 = g.n2();
        red1_.assign(n1, Bitset(n2));
        red2_.assign(n2, Bitset(n1));
        blue1_.assign(n1, Bitset(n2));
        blue2_.assign(n2, Bitset(n1));
        for (std::size_t i = 0; i < n1; ++i) {
            g.neighbours({Part::P1, i}).for_each([&](std::size_t j) {
                if (is_red(i, j)) {
                    red1_[i].set(j);
                    red2_[j].set(i);
                } else {
                    blue1_[i].set(j);
                    blue2_[j].set(i);
                }
            });
        }
    }

    static TwoColouring monochrome(const BipartiteGraph& g, Colour c) {
        return TwoColouring(g, [c](std::size_t, std::size_t) { return c == Colour::Red; });
    }

    std::size_t n1() const noexcept { return red1_.size(); }
    std::size_t n2() const noexcept { return red2_.size(); }
    bool matches(const BipartiteGraph& g) const noexcept { return g.n1() == n1() && g.n2() == n2(); }

    /// Colour of an existing edge.
    Colour colour(std::size_t i, std::size_t j) const {
        if (red1_.at(i).test(j)) return Colour::Red;
        if (blue1_.at(i).test(j)) return Colour::Blue;
        throw std::invalid_argument("no edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    Colour colour(Edge e) const { return colour(e.i, e.j); }
    bool has_edge(std::size_t i, std::size_t j, Colour c) const {
        return i < n1() && j < n2() && (c == Colour::Red ? red1_[i] : blue1_[i]).test(j);
    }

    AdjacencyView view(Colour c) const noexcept {
        return c == Colour::Red ? AdjacencyView{&red1_, &red2_} : AdjacencyView{&blue1_, &blue2_};
    }
    const Bitset& neighbours(VertexId v, Colour c) const { return view(c).row(v); }
    std::size_t degree(VertexId v, Colour c) const { return neighbours(v, c).count(); }
    std::size_t edge_count(Colour c) const {
        std::size_t m = 0;
        for (const auto& r : (c == Colour::Red ? red1_ : blue1_)) m += r.count();
        return m;
    }

    /// Same edges with every colour exchanged.
    TwoColouring swapped() const {
        TwoColouring t;
        t.red1_ = blue1_;
        t.red2_ = blue2_;
        t.blue1_ = red1_;
        t.blue2_ = red2_;
        return t;
    }

    bool operator==(const TwoColouring&) const = default;

private:
    std::vector<Bitset> red1_, red2_, blue1_, blue2_;
};

/// Colour index 0..r-1 on every edge; slot (i, j) holds kNoEdge for non-edges.
class RColouring {
public:
    static constexpr std::uint8_t kNoEdge = 0xFF;

    RColouring() = default;
    /// Every edge of `g` gets colour 0.
    RColouring(const BipartiteGraph& g, unsigned r) : n1_(g.n1()), n2_(g.n2()), r_(r), slots_(n1_ * n2_, kNoEdge) {
        if (r < 1 || r > 254) throw std::invalid_argument("colour count must be in [1, 254]");
        for (const auto& e : g.edges()) slots_[e.i * n2_ + e.j] = 0;
    }
    static RColouring from(const BipartiteGraph& g, const TwoColouring& c) {
        RColouring rc(g, 2);
        for (const auto& e : g.edges()) rc.set(e.i, e.j, static_cast<unsigned>(c.colour(e)));
        return rc;
    }

    std::size_t n1() const noexcept { return n1_; }
    std::size_t n2() const noexcept { return n2_; }
    unsigned colours() const noexcept { return r_; }
    bool has_edge(std::size_t i, std::size_t j) const { return slots_.at(i * n2_ + j) != kNoEdge; }
    unsigned colour(std::size_t i, std::size_t j) const {
        auto c = slots_.at(i * n2_ + j);
        if (c == kNoEdge) throw std::invalid_argument("no edge");
        return c;
    }
    void set(std::size_t i, std::size_t j, unsigned c) {
        if (c >= r_) throw std::invalid_argument("colour index out of range");
        auto& s = slots_.at(i * n2_ + j);
        if (s == kNoEdge) throw std::invalid_argument("cannot colour a non-edge");
        s = static_cast<std::uint8_t>(c);
    }

    /// Adjacency rows of colour class `c`: {rows over V2 for each V1 vertex, rows over V1 for each V2 vertex}.
    std::pair<std::vector<Bitset>, std::vector<Bitset>> class_rows(unsigned c) const {
        std::vector<Bitset> r1(n1_, Bitset(n2_)), r2(n2_, Bitset(n1_));
        for (std::size_t i = 0; i < n1_; ++i)
            for (std::size_t j = 0; j < n2_; ++j)
                if (slots_[i * n2_ + j] == c) {
                    r1[i].set(j);
                    r2[j].set(i);
                }
        return {std::move(r1), std::move(r2)};
    }

    /// Converts back to red (0) / blue (1). Requires r <= 2.
    TwoColouring to_two_colouring(const BipartiteGraph& g) const {
        if (r_ > 2) throw std::invalid_argument("colouring uses more than two colours");
        return TwoColouring(g, [this](std::size_t i, std::size_t j) { return colour(i, j) == 0; });
    }

    bool operator==(const RColouring&) const = default;

private:
    std::size_t n1_ = 0, n2_ = 0;
    unsigned r_ = 1;
    std::vector<std::uint8_t> slots_;
};

struct MonoTree {
    Colour colour = Colour::Red;
    VertexSet vertices;
    std::vector<Edge> edges;
};

struct TreeCover {
    std::vector<MonoTree> trees;
    VertexSet uncovered;
};

struct MonoPart {
    Colour colour = Colour::Red;
    VertexSet vertices;
};

struct MonoPartition {
    std::vector<MonoPart> parts;
};

namespace detail {

inline std::size_t edges_between(const std::vector<Bitset>& rows, const Bitset& from, const Bitset& to) {
    std::size_t m = 0;
    from.for_each([&](std::size_t v) { m += Bitset::intersect_count(rows[v], to); });
    return m;
}

inline void require_vertex(const AdjacencyView& a, VertexId v) {
    if (v.index >= (v.part == Part::P1 ? a.n1() : a.n2()))
        throw std::out_of_range("vertex " + to_string(v) + " out of range");
}

inline std::size_t degree_within(const AdjacencyView& a, VertexId v, const VertexSet& within) {
    require_vertex(a, v);
    if (within.n1() != a.n1() || within.n2() != a.n2()) throw std::invalid_argument("vertex set size mismatch");
    if (within.side(v.part).any())
        throw std::invalid_argument("degree filter must lie in the part opposite to " + to_string(v));
    return Bitset::intersect_count(a.row(v), within.side(opposite(v.part)));
}

inline std::size_t count_between(const AdjacencyView& a, const VertexSet& A, const VertexSet& B) {
    if (A.empty() || B.empty()) return 0;
    auto side_of = [](const VertexSet& s) -> Part {
        bool one = s.side(Part::P1).any(), two = s.side(Part::P2).any();
        if (one && two) throw std::invalid_argument("vertex set spans both parts");
        return one ? Part::P1 : Part::P2;
    };
    Part pa = side_of(A), pb = side_of(B);
    if (pa == pb) throw std::invalid_argument("edge count requires sets on opposite sides");
    return edges_between(a.rows(pa), A.side(pa), B.side(pb));
}

}  // namespace detail

inline std::size_t degree(const BipartiteGraph& g, VertexId v) {
    detail::require_vertex(g.view(), v);
    return g.degree(v);
}
inline std::size_t degree(const BipartiteGraph& g, VertexId v, const VertexSet& within) {
    return detail::degree_within(g.view(), v, within);
}
inline std::size_t degree(const TwoColouring& c, Colour colour, VertexId v) {
    detail::require_vertex(c.view(colour), v);
    return c.degree(v, colour);
}
inline std::size_t degree(const TwoColouring& c, Colour colour, VertexId v, const VertexSet& within) {
    return detail::degree_within(c.view(colour), v, within);
}

/// e(A, B). A and B must each lie within one part, on opposite sides (or be empty).
inline std::size_t edge_count_between(const BipartiteGraph& g, const VertexSet& A, const VertexSet& B) {
    return detail::count_between(g.view(), A, B);
}
inline std::size_t edge_count_between(const TwoColouring& c, Colour colour, const VertexSet& A, const VertexSet& B) {
    return detail::count_between(c.view(colour), A, B);
}

}  // namespace monocover
