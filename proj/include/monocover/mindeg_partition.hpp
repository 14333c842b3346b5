#pragma once

// Partition of a 2-coloured balanced bipartite graph of minimum degree at
// least (13/16 + delta)n into at most three monochromatic connected parts.
//
// Like almost_cover, the construction works in a frame (c1, root1 in part A;
// c2, root2 in part B). Sets named after the construction (jy, x_prime, w, u,
// jx) live in that frame; x and y are kept in the original colour frame.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monocover/components.hpp"
#include "monocover/errors.hpp"
#include "monocover/graph.hpp"
#include "monocover/preference.hpp"
#include "monocover/random.hpp"
#include "monocover/rational.hpp"

namespace monocover {

struct PartitionParams {
    Rational delta{1, 20};
    std::optional<Rational> subsample_p;  // defaults to min(1/25, delta)
    std::size_t retry_limit = 32;
    Seed seed{};

    Rational effective_subsample_p() const {
        if (subsample_p) return *subsample_p;
        return delta < Rational(1, 25) ? delta : Rational(1, 25);
    }

    void validate() const {
        if (delta <= Rational(0) || delta >= Rational(3, 16)) throw std::invalid_argument("delta must lie in (0,3/16)");
        const Rational ps = effective_subsample_p();
        if (ps <= Rational(0) || ps > Rational(1, 25)) throw std::invalid_argument("subsample p must lie in (0,1/25]");
        if (retry_limit < 1) throw std::invalid_argument("retry limit must be at least 1");
    }
};

struct PartitionState {
    bool populated = false;  // false when a heavy set was empty (single-colour shortcut)
    Colour shortcut_colour = Colour::Red;

    VertexSet v_red, v_blue;
    std::optional<VertexId> root_r, root_b;
    VertexSet x, y;  // x ⊆ N_R(root_r) \ {root_b}, y ⊆ N_B(root_b) \ {root_r}
    Colour majority_colour = Colour::Red;

    VertexSet jy;        // ⊆ y for a red majority, ⊆ x otherwise
    VertexSet x_prime;   // subsample of the other of x, y
    VertexSet jy_pinned; // jy vertices without a majority-colour edge into x_prime
    std::size_t x_prime_attempts = 0;
    std::size_t jy_attempts = 0;

    VertexSet w, w_red, w_blue;  // w_red / w_blue split w by the colour c_w
    Colour big_colour = Colour::Blue;  // the colour whose W-class has at least 0.4n vertices
    VertexSet u;
    std::optional<VertexId> u0;
    VertexSet jx;
    std::size_t jx_attempts = 0;

    PreferenceMap rho;

    VertexId primary_root() const { return majority_colour == Colour::Red ? *root_r : *root_b; }
    VertexId secondary_root() const { return majority_colour == Colour::Red ? *root_b : *root_r; }
};

struct PartitionResult {
    MonoPartition partition;
    PartitionState state;
};

namespace detail {

inline std::size_t colour_count(const PreferenceMap& rho, Part p, const Bitset& members, Colour c) {
    std::size_t k = 0;
    members.for_each([&](std::size_t i) {
        if (rho.get({p, i}) == c) ++k;
    });
    return k;
}

/// Number of `c`-neighbours of v inside `members` whose preference is c.
inline std::size_t matching_neighbours(const TwoColouring& col, const PreferenceMap& rho, VertexId v, Colour c,
                                       const Bitset& members) {
    const Bitset hits = col.neighbours(v, c) & members;
    return colour_count(rho, opposite(v.part), hits, c);
}

inline Rational times_n(const Rational& r, std::size_t n) { return r * Rational(static_cast<std::int64_t>(n)); }

inline std::size_t floor_size(const Rational& r) { return static_cast<std::size_t>(r.floor()); }
inline std::size_t ceil_size(const Rational& r) { return static_cast<std::size_t>(r.ceil()); }

struct RandomisedClass {
    Bitset primary;  // members preferring c1
    std::size_t attempts = 0;
};

/// Re-randomises the preferences of `members` until every client meets its
/// target number of matches; the best attempt is kept, and accepted as long as
/// every client has one match.
template <class Score>
RandomisedClass randomise_until(const Bitset& members, const Bitset& pinned, const CounterRng& rng,
                                std::size_t retry_limit, Score score, const char* step) {
    RandomisedClass best;
    std::size_t best_short = static_cast<std::size_t>(-1);
    bool best_viable = false;
    for (std::size_t attempt = 0; attempt < retry_limit; ++attempt) {
        const CounterRng draw = rng.derive(attempt);
        Bitset primary(members.size());
        (members - pinned).for_each([&](std::size_t i) {
            if (draw.coin(i)) primary.set(i);
        });
        const auto [shortfall, viable] = score(primary);
        best.attempts = attempt + 1;
        if (shortfall < best_short) {
            best_short = shortfall;
            best_viable = viable;
            best.primary = std::move(primary);
        }
        if (best_short == 0) break;
    }
    if (!best_viable)
        throw RetryExhausted(step, "a client had no matching neighbour after " + std::to_string(retry_limit) + " attempts");
    return best;
}

}  // namespace detail

inline PartitionResult partition3(const BipartiteGraph& g, const TwoColouring& c, const PartitionParams& params) {
    params.validate();
    if (!g.balanced()) throw PreconditionError("input", "graph is not balanced");
    if (!c.matches(g)) throw std::invalid_argument("colouring does not match graph");
    const std::size_t n = g.n1();
    const Rational delta = params.delta;
    const Rational ps = params.effective_subsample_p();
    if (!count_at_least(g.min_degree(), detail::times_n(Rational(13, 16) + delta, n)))
        throw PreconditionError("input", "minimum degree " + std::to_string(g.min_degree()) + " is below (13/16+delta)n");
    using detail::times_n;

    PartitionResult result;
    PartitionState& s = result.state;
    s.rho = PreferenceMap(n, n);
    const VertexSet everything = g.all_vertices();

    auto emit_components = [&](Colour col, const VertexSet& members, MonoPartition& out) {
        for (auto& comp : components_within(c.view(col), members)) out.parts.push_back({col, std::move(comp)});
    };

    // Step 1: heavy sets.
    const Rational heavy = times_n(Rational(9, 16) + delta * Rational(3, 4), n);
    s.v_red = VertexSet(n, n);
    s.v_blue = VertexSet(n, n);
    everything.for_each([&](VertexId v) {
        if (count_at_least(c.degree(v, Colour::Red), heavy)) s.v_red.insert(v);
        if (count_at_least(c.degree(v, Colour::Blue), heavy)) s.v_blue.insert(v);
    });
    if (s.v_red.empty() || s.v_blue.empty()) {
        s.shortcut_colour = s.v_blue.empty() ? Colour::Red : Colour::Blue;
        everything.for_each([&](VertexId v) { s.rho.set(v, s.shortcut_colour); });
        emit_components(s.shortcut_colour, everything, result.partition);
        if (result.partition.parts.size() > 3)
            throw BoundAssertion("single-colour", std::to_string(result.partition.parts.size()) + " components");
        return result;
    }

    // Step 2: roots in opposite parts, preferring a red root in V1.
    for (Part red_part : {Part::P1, Part::P2}) {
        std::size_t r = s.v_red.side(red_part).find_first();
        std::size_t b = s.v_blue.side(opposite(red_part)).find_first();
        if (r != Bitset::npos && b != Bitset::npos) {
            s.root_r = VertexId{red_part, r};
            s.root_b = VertexId{opposite(red_part), b};
            break;
        }
    }
    if (!s.root_r) {
        // Not covered by the construction: fall back to a colour with at most three components.
        for (Colour col : {Colour::Red, Colour::Blue}) {
            MonoPartition single;
            emit_components(col, everything, single);
            if (single.parts.size() <= 3) {
                s.shortcut_colour = col;
                everything.for_each([&](VertexId v) { s.rho.set(v, col); });
                result.partition = std::move(single);
                return result;
            }
        }
        throw BoundAssertion("roots-opposite-parts", "all heavy vertices lie in one part");
    }
    s.populated = true;

    // Step 3: x, y by lowest index.
    const std::size_t xy_size = detail::floor_size(times_n(Rational(9, 16) + delta / Rational(2), n));
    auto lowest_neighbours = [&](VertexId root, Colour col, VertexId other, const char* name) {
        Bitset nb = c.neighbours(root, col);
        nb.reset(other.index);
        if (nb.count() < xy_size)
            throw BoundAssertion("choose-xy", std::string(name) + " pool has " + std::to_string(nb.count()) +
                                                  " vertices, need " + std::to_string(xy_size));
        return nb.lowest(xy_size);
    };
    const Bitset x_bits = lowest_neighbours(*s.root_r, Colour::Red, *s.root_b, "x");
    const Bitset y_bits = lowest_neighbours(*s.root_b, Colour::Blue, *s.root_r, "y");
    s.x = VertexSet::on_side(n, n, s.root_b->part, x_bits);
    s.y = VertexSet::on_side(n, n, s.root_r->part, y_bits);

    // Step 4: majority colour between x and y.
    const Rational majority_bound = Rational(static_cast<std::int64_t>(xy_size)) * times_n(Rational(3, 16) + delta / Rational(2), n);
    const auto& rows_y = c.view(Colour::Red).rows(s.root_r->part);
    const std::size_t e_red = detail::edges_between(rows_y, y_bits, x_bits);
    const std::size_t e_blue = detail::edges_between(c.view(Colour::Blue).rows(s.root_r->part), y_bits, x_bits);
    if (count_at_least(e_red, majority_bound)) s.majority_colour = Colour::Red;
    else if (count_at_least(e_blue, majority_bound)) s.majority_colour = Colour::Blue;
    else throw BoundAssertion("majority", "neither colour has (3/16+delta/2)n|Y| edges between X and Y");

    const Colour c1 = s.majority_colour, c2 = swap_colour(c1);
    const VertexId root1 = s.primary_root(), root2 = s.secondary_root();
    const Part A = root1.part, B = root2.part;
    const Bitset& X = c1 == Colour::Red ? x_bits : y_bits;  // side B
    const Bitset& Y = c1 == Colour::Red ? y_bits : x_bits;  // side A

    // Step 5: jY.
    Bitset jy(n);
    Y.for_each([&](std::size_t i) {
        if (count_at_least(Bitset::intersect_count(c.neighbours({A, i}, c1), X), times_n(delta / Rational(100), n))) jy.set(i);
    });
    if (!count_at_least(jy.count(), times_n(Rational(3, 16), n)))
        throw BoundAssertion("jy-size", "|jY| = " + std::to_string(jy.count()) + " < 3n/16");
    s.jy = VertexSet::on_side(n, n, A, jy);

    // Step 6: subsample X' of X.
    {
        const CounterRng rng(params.seed, "x-prime");
        const Rational lo = times_n(ps / Rational(2), n), hi = times_n(ps, n);
        const Rational deg_bound = times_n(delta * ps / Rational(200), n);
        Bitset best;
        std::pair<int, std::size_t> best_key{2, 0};
        for (std::size_t attempt = 0; attempt < params.retry_limit; ++attempt) {
            const CounterRng draw = rng.derive(attempt);
            Bitset xp(n);
            X.for_each([&](std::size_t i) {
                if (draw.bernoulli(i, ps)) xp.set(i);
            });
            const bool size_ok = count_at_least(xp.count(), lo) && count_at_most(xp.count(), hi);
            std::size_t low_degree = 0;
            jy.for_each([&](std::size_t i) {
                if (!count_at_least(Bitset::intersect_count(c.neighbours({A, i}, c1), xp), deg_bound)) ++low_degree;
            });
            const std::pair<int, std::size_t> key{size_ok ? 0 : 1, low_degree};
            s.x_prime_attempts = attempt + 1;
            if (attempt == 0 || key < best_key) {
                best_key = key;
                best = std::move(xp);
            }
            if (best_key == std::pair<int, std::size_t>{0, 0}) break;
        }
        s.x_prime = VertexSet::on_side(n, n, B, best);
    }
    const Bitset& xp = s.x_prime.side(B);
    Bitset pinned(n);
    jy.for_each([&](std::size_t i) {
        if (!c.neighbours({A, i}, c1).intersects(xp)) pinned.set(i);
    });
    s.jy_pinned = VertexSet::on_side(n, n, A, pinned);

    // Step 7: preferences on X', Y, W.
    s.rho.set(root1, c1);
    s.rho.set_all(B, xp, c1);
    s.rho.set(root2, c2);
    s.rho.set_all(A, Y - jy, c2);

    Bitset w = xp.complement();
    w.reset(root2.index);
    s.w = VertexSet::on_side(n, n, B, w);
    Bitset w_c1(n), w_c2(n);
    const Rational half_delta_n = times_n(delta / Rational(2), n);
    w.for_each([&](std::size_t i) {
        const std::size_t k1 = Bitset::intersect_count(c.neighbours({B, i}, c1), jy);
        const std::size_t k2 = Bitset::intersect_count(c.neighbours({B, i}, c2), jy);
        if (!count_at_least(std::max(k1, k2), half_delta_n))
            throw BoundAssertion("w-colour", "vertex " + to_string(VertexId{B, i}) + " has fewer than delta*n/2 same-coloured jY neighbours");
        (k1 >= k2 ? w_c1 : w_c2).set(i);
    });
    s.rho.set_all(B, w_c1, c1);
    s.rho.set_all(B, w_c2, c2);
    s.w_red = VertexSet::on_side(n, n, B, c1 == Colour::Red ? w_c1 : w_c2);
    s.w_blue = VertexSet::on_side(n, n, B, c1 == Colour::Red ? w_c2 : w_c1);

    {
        const Rational target = times_n(delta / Rational(8), n);
        auto score = [&](const Bitset& primary) {
            PreferenceMap trial = s.rho;
            trial.set_all(A, jy - primary, c2);
            trial.set_all(A, primary, c1);
            std::size_t shortfall = 0;
            bool viable = true;
            w.for_each([&](std::size_t i) {
                const Colour cw = w_c1.test(i) ? c1 : c2;
                const std::size_t m = detail::matching_neighbours(c, trial, {B, i}, cw, jy);
                if (!count_at_least(m, target)) ++shortfall;
                if (m == 0) viable = false;
            });
            return std::pair{shortfall, viable};
        };
        auto drawn = detail::randomise_until(jy, pinned, CounterRng(params.seed, "rho-jy"), params.retry_limit, score, "jy-randomise");
        s.jy_attempts = drawn.attempts;
        s.rho.set_all(A, jy - drawn.primary, c2);
        s.rho.set_all(A, drawn.primary, c1);
    }

    // Step 8: the W-class with at least 0.4n vertices.
    const Rational big = times_n(Rational(2, 5), n);
    Colour bc;
    if (count_at_least(w_c2.count(), big)) bc = c2;
    else if (count_at_least(w_c1.count(), big)) bc = c1;
    else throw BoundAssertion("w-big", "neither W-class has 0.4n vertices");
    s.big_colour = bc;
    const Colour oc = swap_colour(bc);
    const Bitset& w_bc = bc == c1 ? w_c1 : w_c2;

    // Step 9: U.
    Bitset u = Y.complement();
    u.reset(root1.index);
    s.u = VertexSet::on_side(n, n, A, u);
    std::size_t u0 = Bitset::npos;
    for (std::size_t i = u.find_first(); i != Bitset::npos; i = u.find_next(i)) {
        if (!c.neighbours({A, i}, bc).intersects(w_bc)) {
            u0 = i;
            break;
        }
    }
    s.jx = VertexSet(n, n);
    if (u0 == Bitset::npos) {
        s.rho.set_all(A, u, bc);
    } else {
        // Step 10: jX ⊆ N_oc(u0) ∩ W_bc, fresh preferences on jX.
        s.u0 = VertexId{A, u0};
        const Bitset pool = c.neighbours(*s.u0, oc) & w_bc;
        const Rational jx_bound = times_n(Rational(3, 16) + delta, n);
        if (!count_at_least(pool.count(), jx_bound))
            throw BoundAssertion("u0-degree", "d(u0, W) = " + std::to_string(pool.count()) + " < (3/16+delta)n");
        const Bitset jx = pool.lowest(detail::ceil_size(jx_bound));
        s.jx = VertexSet::on_side(n, n, B, jx);
        const Rational delta_n = times_n(delta, n);
        u.for_each([&](std::size_t i) {
            const std::size_t k1 = Bitset::intersect_count(c.neighbours({A, i}, c1), jx);
            const std::size_t k2 = Bitset::intersect_count(c.neighbours({A, i}, c2), jx);
            if (!count_at_least(std::max(k1, k2), delta_n))
                throw BoundAssertion("u-colour", "vertex " + to_string(VertexId{A, i}) + " has fewer than delta*n same-coloured jX neighbours");
            s.rho.set({A, i}, k1 >= k2 ? c1 : c2);
        });
        const Rational target = times_n(delta / Rational(2), n);
        auto score = [&](const Bitset& primary) {
            PreferenceMap trial = s.rho;
            trial.set_all(B, jx - primary, c2);
            trial.set_all(B, primary, c1);
            std::size_t shortfall = 0;
            bool viable = true;
            u.for_each([&](std::size_t i) {
                const Colour cu = *trial.get({A, i});
                const std::size_t m = detail::matching_neighbours(c, trial, {A, i}, cu, jx);
                if (!count_at_least(m, target)) ++shortfall;
                if (m == 0) viable = false;
            });
            return std::pair{shortfall, viable};
        };
        auto drawn = detail::randomise_until(jx, Bitset(n), CounterRng(params.seed, "rho-jx"), params.retry_limit, score, "jx-randomise");
        s.jx_attempts = drawn.attempts;
        s.rho.set_all(B, jx - drawn.primary, c2);
        s.rho.set_all(B, drawn.primary, c1);
    }

    // Step 11: components of each preference class.
    for (Colour col : {c1, c2}) {
        VertexSet members(n, n);
        everything.for_each([&](VertexId v) {
            if (s.rho.get(v) == col) members.insert(v);
        });
        emit_components(col, members, result.partition);
    }
    if (result.partition.parts.size() > 3)
        throw BoundAssertion("part-count", std::to_string(result.partition.parts.size()) + " parts");
    if (auto report = validate_partition(g, c, result.partition); !report.ok())
        throw std::logic_error("partition3 produced an invalid partition:\n" + report.str());
    return result;
}

/// Measured values against the bounds claimed along the construction. All
/// entries are n/a for the single-colour shortcut.
inline AuditReport audit_partition_state(const PartitionState& s, const BipartiteGraph& g, const TwoColouring& c,
                                         const PartitionParams& params) {
    using detail::times_n;
    AuditReport report;
    const std::pair<const char*, const char*> claims[] = {
        {"e-xy", ">="},        {"jy-size", ">="},   {"x-prime-lower", ">="}, {"x-prime-upper", "<="},
        {"jy-degree", ">="},   {"w-matches", ">="}, {"u-matches", ">="},     {"w-size", ">="},
        {"w-big", ">="}};
    if (!s.populated) {
        for (const auto& [name, rel] : claims) report.claims.push_back(detail::claim_na(name, rel));
        return report;
    }
    const std::size_t n = g.n1();
    const Rational delta = params.delta, ps = params.effective_subsample_p();
    const Colour c1 = s.majority_colour, c2 = swap_colour(c1);
    const Part A = s.primary_root().part, B = s.secondary_root().part;
    const Bitset& xr = s.x.side(s.root_b->part);
    const Bitset& yb = s.y.side(s.root_r->part);
    const Bitset& jy = s.jy.side(A);
    const Bitset& xp = s.x_prime.side(B);

    const std::size_t e_xy = detail::edges_between(g.view().rows(s.root_r->part), yb, xr);
    report.claims.push_back(detail::claim_at_least(
        "e-xy", e_xy, times_n(Rational(3, 8) + delta, n) * Rational(static_cast<std::int64_t>(yb.count()))));
    report.claims.push_back(detail::claim_at_least("jy-size", jy.count(), times_n(Rational(3, 16), n)));
    report.claims.push_back(detail::claim_at_least("x-prime-lower", xp.count(), times_n(ps / Rational(2), n)));
    report.claims.push_back(detail::claim_at_most("x-prime-upper", xp.count(), times_n(ps, n)));

    auto min_over = [](const Bitset& members, auto f) {
        std::optional<std::size_t> m;
        members.for_each([&](std::size_t i) {
            const std::size_t v = f(i);
            if (!m || v < *m) m = v;
        });
        return m;
    };
    auto push_min = [&](const char* name, std::optional<std::size_t> m, const Rational& bound) {
        if (m) report.claims.push_back(detail::claim_at_least(name, *m, bound));
        else report.claims.push_back(detail::claim_na(name, ">="));
    };
    push_min("jy-degree",
             min_over(jy, [&](std::size_t i) { return Bitset::intersect_count(c.neighbours({A, i}, c1), xp); }),
             times_n(delta * ps / Rational(200), n));
    const Bitset& w = s.w.side(B);
    const Bitset& w_c1 = (c1 == Colour::Red ? s.w_red : s.w_blue).side(B);
    push_min("w-matches", min_over(w - s.jx.side(B), [&](std::size_t i) {
                 return detail::matching_neighbours(c, s.rho, {B, i}, w_c1.test(i) ? c1 : c2, jy);
             }),
             times_n(delta / Rational(8), n));
    if (s.u0) {
        const Bitset& jx = s.jx.side(B);
        push_min("u-matches", min_over(s.u.side(A), [&](std::size_t i) {
                     return detail::matching_neighbours(c, s.rho, {A, i}, *s.rho.get({A, i}), jx);
                 }),
                 times_n(delta / Rational(2), n));
    } else {
        report.claims.push_back(detail::claim_na("u-matches", ">="));
    }
    report.claims.push_back(detail::claim_at_least("w-size", w.count(), times_n(Rational(9, 10), n)));
    const std::size_t big = (s.big_colour == Colour::Red ? s.w_red : s.w_blue).count();
    report.claims.push_back(detail::claim_at_least("w-big", big, times_n(Rational(2, 5), n)));
    return report;
}

}  // namespace monocover
