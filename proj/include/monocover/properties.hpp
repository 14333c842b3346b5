#pragma once

// Checks for the pseudo-random properties the covering construction relies
// on. Statements that quantify over all vertex sets are checked only on the
// sets handed in (the sets an algorithm actually used, or random samples).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monocover/components.hpp"
#include "monocover/graph.hpp"
#include "monocover/preference.hpp"
#include "monocover/rational.hpp"

namespace monocover {

enum class PropertyId { Degrees, Codegrees, Expansion, Domination, Connectivity, PairCount };

inline std::string to_string(PropertyId id) {
    switch (id) {
        case PropertyId::Degrees: return "B1_degrees";
        case PropertyId::Codegrees: return "B1_codegrees";
        case PropertyId::Expansion: return "B2_expansion";
        case PropertyId::Domination: return "B3_domination";
        case PropertyId::Connectivity: return "B4_connectivity";
        case PropertyId::PairCount: return "L24_pair_count";
    }
    return "unknown";
}

enum class EdgeFilter { All, Red, Blue };

inline std::string to_string(EdgeFilter f) {
    switch (f) {
        case EdgeFilter::All: return "all";
        case EdgeFilter::Red: return "red";
        case EdgeFilter::Blue: return "blue";
    }
    return "unknown";
}

struct PropertyWitness {
    std::vector<VertexId> vertices;
    std::int64_t measured = 0;
    std::string detail;
};

struct PropertyReport {
    PropertyId id = PropertyId::Degrees;
    AuditStatus status = AuditStatus::NotApplicable;
    std::string note;
    std::size_t checked_instances = 0;
    std::size_t violation_count = 0;
    std::vector<PropertyWitness> violations;  // at most witness_limit of them
    std::optional<std::int64_t> min_measured, max_measured;
    double mean_measured = 0;

    // Inputs needed to re-check a witness.
    Rational p{1};
    Rational epsilon{0};
    std::vector<VertexSet> context;
    EdgeFilter filter = EdgeFilter::All;

    bool violated() const noexcept { return status == AuditStatus::Violated; }
};

inline constexpr std::size_t kWitnessLimit = 256;

namespace detail {

class ReportBuilder {
public:
    explicit ReportBuilder(PropertyReport& r) : r_(r) {}

    void measure(std::int64_t value) {
        ++r_.checked_instances;
        if (!r_.min_measured || value < *r_.min_measured) r_.min_measured = value;
        if (!r_.max_measured || value > *r_.max_measured) r_.max_measured = value;
        sum_ += static_cast<double>(value);
    }
    void violation(PropertyWitness w) {
        if (r_.violation_count++ < kWitnessLimit) r_.violations.push_back(std::move(w));
    }
    void finish() {
        if (r_.checked_instances) r_.mean_measured = sum_ / static_cast<double>(r_.checked_instances);
        r_.status = r_.violation_count ? AuditStatus::Violated : AuditStatus::Satisfied;
    }

private:
    PropertyReport& r_;
    double sum_ = 0;
};

inline bool within_band(std::size_t value, const Rational& centre, const Rational& epsilon) {
    return count_at_least(value, centre * (Rational(1) - epsilon)) && count_at_most(value, centre * (Rational(1) + epsilon));
}

inline Rational as_rational(std::size_t n) { return Rational(static_cast<std::int64_t>(n)); }

inline void require_balanced(const BipartiteGraph& g) {
    if (!g.balanced()) throw std::invalid_argument("property checks need a balanced bipartite graph");
}

inline std::optional<Part> single_side(const VertexSet& s) {
    const bool a = s.side(Part::P1).any(), b = s.side(Part::P2).any();
    if (a && b) return std::nullopt;
    return a ? Part::P1 : Part::P2;
}

inline AdjacencyView filtered_view(const BipartiteGraph& g, const TwoColouring* c, EdgeFilter f) {
    if (f == EdgeFilter::All) return g.view();
    if (!c) throw std::invalid_argument("a colour filter needs a colouring");
    return c->view(f == EdgeFilter::Red ? Colour::Red : Colour::Blue);
}

inline std::size_t min_degree_within(const AdjacencyView& adj, const VertexSet& h) {
    std::size_t best = static_cast<std::size_t>(-1);
    h.for_each([&](VertexId v) {
        best = std::min(best, Bitset::intersect_count(adj.row(v), h.side(opposite(v.part))));
    });
    return best;
}

}  // namespace detail

/// Every vertex degree within (1 ± epsilon)pn.
inline PropertyReport check_degrees(const BipartiteGraph& g, const Rational& p, const Rational& epsilon) {
    detail::require_balanced(g);
    PropertyReport r;
    r.id = PropertyId::Degrees;
    r.p = p;
    r.epsilon = epsilon;
    detail::ReportBuilder out(r);
    const Rational centre = p * detail::as_rational(g.n1());
    g.all_vertices().for_each([&](VertexId v) {
        const std::size_t d = g.degree(v);
        out.measure(static_cast<std::int64_t>(d));
        if (!detail::within_band(d, centre, epsilon)) out.violation({{v}, static_cast<std::int64_t>(d), "degree"});
    });
    out.finish();
    return r;
}

/// Every same-side pair has codegree within (1 ± epsilon)p²n.
inline PropertyReport check_codegrees(const BipartiteGraph& g, const Rational& p, const Rational& epsilon) {
    detail::require_balanced(g);
    PropertyReport r;
    r.id = PropertyId::Codegrees;
    r.p = p;
    r.epsilon = epsilon;
    detail::ReportBuilder out(r);
    const Rational centre = p * p * detail::as_rational(g.n1());
    for (Part side : {Part::P1, Part::P2}) {
        const auto& rows = g.view().rows(side);
        for (std::size_t u = 0; u < rows.size(); ++u) {
            for (std::size_t v = u + 1; v < rows.size(); ++v) {
                const std::size_t k = Bitset::intersect_count(rows[u], rows[v]);
                out.measure(static_cast<std::int64_t>(k));
                if (!detail::within_band(k, centre, epsilon))
                    out.violation({{{side, u}, {side, v}}, static_cast<std::int64_t>(k), "codegree"});
            }
        }
    }
    out.finish();
    return r;
}

/// e(U, W) ≥ p|U||W|/2 for |U| ≥ pn/100 and |W| ≥ 100/p on opposite sides.
inline PropertyReport check_expansion(const BipartiteGraph& g, const Rational& p, const VertexSet& U, const VertexSet& W) {
    detail::require_balanced(g);
    const auto su = detail::single_side(U), sw = detail::single_side(W);
    if (!su || !sw) throw std::invalid_argument("expansion sets must each lie in one part");
    if (U.count() && W.count() && *su == *sw) throw std::invalid_argument("expansion sets must lie in opposite parts");
    PropertyReport r;
    r.id = PropertyId::Expansion;
    r.p = p;
    r.context = {U, W};
    const std::size_t nu = U.count(), nw = W.count();
    if (!count_at_least(nu, p * detail::as_rational(g.n1()) / Rational(100)) || !count_at_least(nw, Rational(100) / p)) {
        r.note = "sets below the size thresholds";
        return r;
    }
    detail::ReportBuilder out(r);
    const std::size_t e = edge_count_between(g, U, W);
    out.measure(static_cast<std::int64_t>(e));
    if (!count_at_least(e, p * detail::as_rational(nu) * detail::as_rational(nw) / Rational(2)))
        out.violation({{}, static_cast<std::int64_t>(e), "e(U,W) below p|U||W|/2"});
    out.finish();
    return r;
}

/// At most 100/p opposite-side vertices have fewer than p²n/200 neighbours in U.
inline PropertyReport check_domination(const BipartiteGraph& g, const Rational& p, const VertexSet& U) {
    detail::require_balanced(g);
    const auto side = detail::single_side(U);
    if (!side) throw std::invalid_argument("domination set must lie in one part");
    PropertyReport r;
    r.id = PropertyId::Domination;
    r.p = p;
    r.context = {U};
    const Rational n = detail::as_rational(g.n1());
    if (!count_at_least(U.count(), p * n / Rational(100))) {
        r.note = "|U| below pn/100";
        return r;
    }
    const Rational low = p * p * n / Rational(200);
    const Part other = opposite(*side);
    std::vector<PropertyWitness> low_vertices;
    for (std::size_t i = 0; i < g.part_size(other); ++i) {
        const VertexId v{other, i};
        const std::size_t d = Bitset::intersect_count(g.neighbours(v), U.side(*side));
        if (!count_at_least(d, low)) low_vertices.push_back({{v}, static_cast<std::int64_t>(d), "d(v,U) below p^2n/200"});
    }
    detail::ReportBuilder out(r);
    out.measure(static_cast<std::int64_t>(low_vertices.size()));
    r.checked_instances = g.part_size(other);
    if (!count_at_most(low_vertices.size(), Rational(100) / p))
        for (auto& w : low_vertices) out.violation(std::move(w));
    out.finish();
    return r;
}

/// The subgraph H on `h_vertices` using edges passing `filter` is connected
/// whenever its minimum degree is at least (1/2 + epsilon)pn.
inline PropertyReport check_min_degree_connectivity(const BipartiteGraph& g, const Rational& p, const Rational& epsilon,
                                                    const VertexSet& h_vertices, EdgeFilter filter,
                                                    const TwoColouring* colouring = nullptr) {
    detail::require_balanced(g);
    PropertyReport r;
    r.id = PropertyId::Connectivity;
    r.p = p;
    r.epsilon = epsilon;
    r.context = {h_vertices};
    r.filter = filter;
    const AdjacencyView adj = detail::filtered_view(g, colouring, filter);
    if (h_vertices.empty()) {
        r.note = "empty subgraph";
        return r;
    }
    const std::size_t mindeg = detail::min_degree_within(adj, h_vertices);
    if (!count_at_least(mindeg, (Rational(1, 2) + epsilon) * p * detail::as_rational(g.n1()))) {
        r.note = "minimum degree " + std::to_string(mindeg) + " below (1/2+epsilon)pn";
        return r;
    }
    detail::ReportBuilder out(r);
    auto comps = components_within(adj, h_vertices);
    out.measure(static_cast<std::int64_t>(comps.size()));
    if (comps.size() > 1)
        out.violation({comps.front().to_vector(), static_cast<std::int64_t>(comps.size()), "component separated from the rest of H"});
    out.finish();
    return r;
}

/// Number of unordered pairs in V1 (first) and V2 (second) without a common neighbour.
inline std::pair<std::uint64_t, std::uint64_t> count_no_common_neighbour_pairs(const BipartiteGraph& g) {
    auto count_side = [&](Part side) {
        const auto& rows = g.view().rows(side);
        std::uint64_t k = 0;
        for (std::size_t u = 0; u < rows.size(); ++u)
            for (std::size_t v = u + 1; v < rows.size(); ++v)
                if (!rows[u].intersects(rows[v])) ++k;
        return k;
    };
    return {count_side(Part::P1), count_side(Part::P2)};
}

inline PropertyReport pair_count_report(const BipartiteGraph& g) {
    PropertyReport r;
    r.id = PropertyId::PairCount;
    const auto [a, b] = count_no_common_neighbour_pairs(g);
    detail::ReportBuilder out(r);
    out.measure(static_cast<std::int64_t>(a));
    out.measure(static_cast<std::int64_t>(b));
    out.finish();
    r.status = AuditStatus::Satisfied;  // informational only
    return r;
}

/// Re-runs the scalar check behind a witness; true iff it still fails.
inline bool verify_witness(const BipartiteGraph& g, const PropertyReport& r, const PropertyWitness& w,
                           const TwoColouring* colouring = nullptr) {
    const Rational n = detail::as_rational(g.n1());
    switch (r.id) {
        case PropertyId::Degrees:
            return w.vertices.size() == 1 && !detail::within_band(g.degree(w.vertices[0]), r.p * n, r.epsilon);
        case PropertyId::Codegrees: {
            if (w.vertices.size() != 2 || w.vertices[0].part != w.vertices[1].part) return false;
            const std::size_t k = Bitset::intersect_count(g.neighbours(w.vertices[0]), g.neighbours(w.vertices[1]));
            return !detail::within_band(k, r.p * r.p * n, r.epsilon);
        }
        case PropertyId::Expansion: {
            const VertexSet &U = r.context.at(0), &W = r.context.at(1);
            return !count_at_least(edge_count_between(g, U, W),
                                   r.p * detail::as_rational(U.count()) * detail::as_rational(W.count()) / Rational(2));
        }
        case PropertyId::Domination: {
            if (w.vertices.size() != 1) return false;
            const VertexSet& U = r.context.at(0);
            const VertexId v = w.vertices[0];
            if (U.side(v.part).any()) return false;
            const std::size_t d = Bitset::intersect_count(g.neighbours(v), U.side(opposite(v.part)));
            return !count_at_least(d, r.p * r.p * n / Rational(200));
        }
        case PropertyId::Connectivity: {
            const VertexSet& H = r.context.at(0);
            const AdjacencyView adj = detail::filtered_view(g, colouring, r.filter);
            VertexSet piece = VertexSet::of(g.n1(), g.n2(), w.vertices);
            if (piece.empty() || piece == H || !(piece - H).empty()) return false;
            const VertexSet rest = H - piece;
            bool crossing = false;
            piece.for_each([&](VertexId v) { crossing = crossing || adj.row(v).intersects(rest.side(opposite(v.part))); });
            return !crossing;
        }
        case PropertyId::PairCount: return false;
    }
    return false;
}

}  // namespace monocover
