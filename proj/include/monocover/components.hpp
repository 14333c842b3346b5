#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "monocover/errors.hpp"
#include "monocover/graph.hpp"

namespace monocover {

/// Connected components of the edge set `adj` restricted to `within`, in order
/// of their lowest vertex (V1 before V2). Vertices with no edge inside
/// `within` come out as singletons.
inline std::vector<VertexSet> components_within(const AdjacencyView& adj, const VertexSet& within) {
    const std::size_t n1 = adj.n1(), n2 = adj.n2();
    std::vector<VertexSet> out;
    VertexSet unseen = within;
    std::vector<VertexId> stack;
    auto grow = [&](VertexId start) {
        VertexSet comp(n1, n2);
        unseen.erase(start);
        comp.insert(start);
        stack.assign(1, start);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            Part other = opposite(v.part);
            Bitset fresh = adj.row(v) & unseen.side(other);
            fresh.for_each([&](std::size_t k) {
                VertexId w{other, k};
                unseen.erase(w);
                comp.insert(w);
                stack.push_back(w);
            });
        }
        out.push_back(std::move(comp));
    };
    for (Part p : {Part::P1, Part::P2}) {
        for (std::size_t i = unseen.side(p).find_first(); i != Bitset::npos; i = unseen.side(p).find_next(i))
            grow({p, i});
    }
    return out;
}

inline bool connected_within(const AdjacencyView& adj, const VertexSet& within) {
    if (within.empty()) return false;
    return components_within(adj, within).size() == 1;
}

/// Components of one colour class; together they partition V(G).
inline std::vector<VertexSet> monochromatic_components(const TwoColouring& c, Colour colour) {
    return components_within(c.view(colour), VertexSet::all(c.n1(), c.n2()));
}

/// A breadth-first spanning tree of `vertices` in colour `colour`.
inline MonoTree spanning_tree_of(const TwoColouring& c, Colour colour, const VertexSet& vertices) {
    if (vertices.empty()) throw NotConnectedError("cannot span an empty vertex set");
    const AdjacencyView adj = c.view(colour);
    MonoTree tree{colour, VertexSet(c.n1(), c.n2()), {}};
    VertexSet unseen = vertices;
    VertexId root = vertices.to_vector().front();
    unseen.erase(root);
    tree.vertices.insert(root);
    std::vector<VertexId> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        Part other = opposite(v.part);
        Bitset fresh = adj.row(v) & unseen.side(other);
        fresh.for_each([&](std::size_t k) {
            VertexId w{other, k};
            unseen.erase(w);
            tree.vertices.insert(w);
            tree.edges.push_back(edge_between(v, w));
            queue.push_back(w);
        });
    }
    if (!unseen.empty())
        throw NotConnectedError(std::to_string(unseen.count()) + " vertices unreachable in " + to_string(colour));
    return tree;
}

enum class ViolationKind {
    OutOfRange,
    EmptyTree,
    EdgeNotInGraph,
    WrongColour,
    EdgeOutsideTree,
    NotATree,
    Overlap,
    Coverage,
    Disconnected,
    TooManyParts,
};

inline std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::OutOfRange: return "out-of-range";
        case ViolationKind::EmptyTree: return "empty";
        case ViolationKind::EdgeNotInGraph: return "edge-not-in-graph";
        case ViolationKind::WrongColour: return "wrong-colour";
        case ViolationKind::EdgeOutsideTree: return "edge-outside-tree";
        case ViolationKind::NotATree: return "not-a-tree";
        case ViolationKind::Overlap: return "overlap";
        case ViolationKind::Coverage: return "coverage";
        case ViolationKind::Disconnected: return "disconnected";
        case ViolationKind::TooManyParts: return "too-many-parts";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(ViolationKind k) const {
        for (const auto& v : violations)
            if (v.kind == k) return true;
        return false;
    }
    std::string str() const {
        std::string s;
        for (const auto& v : violations) s += to_string(v.kind) + ": " + v.detail + "\n";
        return s;
    }
};

namespace detail {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
    std::vector<std::size_t> parent;
};

/// Overlap and exact-coverage accounting shared by both validators.
inline void check_sets_partition(const BipartiteGraph& g, const std::vector<const VertexSet*>& sets,
                                 const std::string& label, ValidationReport& report) {
    VertexSet seen(g.n1(), g.n2());
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (sets[k]->intersects(seen))
            report.violations.push_back({ViolationKind::Overlap, label + " " + std::to_string(k) + " overlaps an earlier set"});
        seen |= *sets[k];
    }
    if (seen != g.all_vertices())
        report.violations.push_back({ViolationKind::Coverage,
                                     std::to_string(g.vertex_count() - seen.count()) + " vertices unaccounted for"});
}

inline bool dims_match(const BipartiteGraph& g, const VertexSet& s) { return s.n1() == g.n1() && s.n2() == g.n2(); }

}  // namespace detail

/// Checks tree-ness, colour purity, vertex-disjointness and that trees plus
/// `uncovered` account for V(G) exactly once. Empty report iff valid.
inline ValidationReport validate_cover(const BipartiteGraph& g, const TwoColouring& c, const TreeCover& cover) {
    ValidationReport report;
    if (!c.matches(g)) {
        report.violations.push_back({ViolationKind::OutOfRange, "colouring does not match graph dimensions"});
        return report;
    }
    std::vector<const VertexSet*> sets;
    for (std::size_t t = 0; t < cover.trees.size(); ++t) {
        const MonoTree& tree = cover.trees[t];
        const std::string name = "tree " + std::to_string(t);
        if (!detail::dims_match(g, tree.vertices)) {
            report.violations.push_back({ViolationKind::OutOfRange, name + " vertex set has wrong dimensions"});
            continue;
        }
        sets.push_back(&tree.vertices);
        const std::size_t nv = tree.vertices.count();
        if (nv == 0) {
            report.violations.push_back({ViolationKind::EmptyTree, name + " has no vertices"});
            continue;
        }
        if (tree.edges.size() + 1 != nv)
            report.violations.push_back({ViolationKind::NotATree, name + " has " + std::to_string(tree.edges.size()) +
                                                                      " edges on " + std::to_string(nv) + " vertices"});
        detail::DisjointSets dsu(g.vertex_count());
        bool cycle = false;
        for (const Edge& e : tree.edges) {
            if (e.i >= g.n1() || e.j >= g.n2()) {
                report.violations.push_back({ViolationKind::OutOfRange, name + " edge index out of range"});
                continue;
            }
            const std::string es = "(" + std::to_string(e.i) + "," + std::to_string(e.j) + ")";
            if (!g.has_edge(e)) {
                report.violations.push_back({ViolationKind::EdgeNotInGraph, name + " edge " + es});
                continue;
            }
            if (c.colour(e) != tree.colour)
                report.violations.push_back({ViolationKind::WrongColour, name + " edge " + es + " is " + to_string(c.colour(e))});
            if (!tree.vertices.contains({Part::P1, e.i}) || !tree.vertices.contains({Part::P2, e.j}))
                report.violations.push_back({ViolationKind::EdgeOutsideTree, name + " edge " + es});
            if (!dsu.unite(e.i, g.n1() + e.j)) cycle = true;
        }
        if (cycle) report.violations.push_back({ViolationKind::NotATree, name + " contains a cycle"});
        std::optional<std::size_t> root;
        bool split = false;
        tree.vertices.for_each([&](VertexId v) {
            std::size_t gid = v.part == Part::P1 ? v.index : g.n1() + v.index;
            std::size_t r = dsu.find(gid);
            if (!root) root = r;
            else if (*root != r) split = true;
        });
        if (split) report.violations.push_back({ViolationKind::NotATree, name + " is disconnected"});
    }
    if (!detail::dims_match(g, cover.uncovered)) {
        report.violations.push_back({ViolationKind::OutOfRange, "uncovered set has wrong dimensions"});
        return report;
    }
    sets.push_back(&cover.uncovered);
    detail::check_sets_partition(g, sets, "set", report);
    return report;
}

/// Checks that parts are nonempty, disjoint, exhaustive and each connected
/// in its own colour.
inline ValidationReport validate_partition(const BipartiteGraph& g, const TwoColouring& c, const MonoPartition& partition) {
    ValidationReport report;
    if (!c.matches(g)) {
        report.violations.push_back({ViolationKind::OutOfRange, "colouring does not match graph dimensions"});
        return report;
    }
    std::vector<const VertexSet*> sets;
    for (std::size_t k = 0; k < partition.parts.size(); ++k) {
        const MonoPart& part = partition.parts[k];
        const std::string name = "part " + std::to_string(k);
        if (!detail::dims_match(g, part.vertices)) {
            report.violations.push_back({ViolationKind::OutOfRange, name + " vertex set has wrong dimensions"});
            continue;
        }
        sets.push_back(&part.vertices);
        if (part.vertices.empty()) {
            report.violations.push_back({ViolationKind::EmptyTree, name + " is empty"});
            continue;
        }
        if (!connected_within(c.view(part.colour), part.vertices))
            report.violations.push_back({ViolationKind::Disconnected, name + " is disconnected in " + to_string(part.colour)});
    }
    detail::check_sets_partition(g, sets, "part", report);
    return report;
}

}  // namespace monocover
