#pragma once

// Almost-cover of a 2-coloured balanced bipartite graph by at most three
// vertex-disjoint monochromatic trees.
//
// The construction runs in a "frame": a primary colour c1 with its root in
// part A, and the other colour c2 with its root in part B. When blue is the
// majority colour between the two root neighbourhoods the frame is mirrored
// (c1 = blue, roots exchanged) instead of recolouring the input, so every
// set recorded in CoverState is in the original colour frame.

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

struct CoverParams {
    Rational p{1, 2};
    Rational epsilon{1, 10};  // only recorded; the property checks consume it
    std::size_t retry_limit = 16;
    Seed seed{};

    void validate() const {
        if (p <= Rational(0) || p > Rational(1)) throw std::invalid_argument("p must lie in (0,1]");
        if (epsilon <= Rational(0) || epsilon >= Rational(1)) throw std::invalid_argument("epsilon must lie in (0,1)");
        if (retry_limit < 1) throw std::invalid_argument("retry limit must be at least 1");
    }
};

enum class CoverCase { SpanningMono, Case1, Case2 };

inline std::string to_string(CoverCase c) {
    switch (c) {
        case CoverCase::SpanningMono: return "spanning";
        case CoverCase::Case1: return "case1";
        case CoverCase::Case2: return "case2";
    }
    return "unknown";
}

enum class UncoveredReason { K1, K2, RhoUnmatched, RhoPrimeUnmatched, NoAttachEdge };

inline std::string to_string(UncoveredReason r) {
    switch (r) {
        case UncoveredReason::K1: return "k1";
        case UncoveredReason::K2: return "k2";
        case UncoveredReason::RhoUnmatched: return "rho-unmatched";
        case UncoveredReason::RhoPrimeUnmatched: return "rho-prime-unmatched";
        case UncoveredReason::NoAttachEdge: return "no-attach-edge";
    }
    return "unknown";
}

struct CoverState {
    Rational p{1, 2};
    CoverCase cover_case = CoverCase::SpanningMono;
    bool populated = false;  // false for the spanning shortcut and default states

    VertexSet v_red, v_blue;
    std::optional<VertexId> root_r, root_b;
    Colour majority_colour = Colour::Red;

    VertexSet j1, z2, k2, z2r, z2b;
    VertexSet z2_unmatched;  // Z2 vertices without a rho-matching J1 neighbour
    PreferenceMap rho;
    std::size_t rho_attempts = 0;

    std::optional<VertexId> tilde_v;
    bool case1_swapped = false;  // T3 has the majority colour instead of the minority one
    VertexSet j2, z1, k1;
    VertexSet z1_unmatched;
    PreferenceMap rho_prime;
    std::size_t rho_prime_attempts = 0;

    std::vector<std::pair<VertexId, UncoveredReason>> uncovered_reasons;

    /// Root of the majority-colour tree.
    VertexId primary_root() const { return majority_colour == Colour::Red ? *root_r : *root_b; }
    VertexId secondary_root() const { return majority_colour == Colour::Red ? *root_b : *root_r; }
};

struct CoverResult {
    TreeCover cover;
    CoverState state;
};

namespace detail {

struct CoverFrame {
    Colour c1, c2;
    VertexId root1, root2;
    Part a() const noexcept { return root1.part; }
    Part b() const noexcept { return root2.part; }

    static CoverFrame of(const CoverState& s) {
        return {s.majority_colour, swap_colour(s.majority_colour), s.primary_root(), s.secondary_root()};
    }
};

struct CoverThresholds {
    Rational j1, z, rho, big, small, uncovered;

    CoverThresholds(const Rational& p, std::size_t n) {
        const Rational nn(static_cast<std::int64_t>(n));
        const Rational p2n = p * p * nn;
        j1 = p2n / Rational(25);
        z = p2n / Rational(200);
        rho = p2n / Rational(400);
        big = p * nn / Rational(100);
        small = Rational(100) / p;
        uncovered = Rational(200) / p;
    }
};

/// N_{c1}(root1) \ {root2} on side B.
inline Bitset primary_neighbourhood(const TwoColouring& c, const CoverFrame& f) {
    Bitset s = c.neighbours(f.root1, f.c1);
    s.reset(f.root2.index);
    return s;
}
/// N_{c2}(root2) \ {root1} on side A.
inline Bitset secondary_neighbourhood(const TwoColouring& c, const CoverFrame& f) {
    Bitset s = c.neighbours(f.root2, f.c2);
    s.reset(f.root1.index);
    return s;
}
/// A \ (N_{c2}(root2) ∪ {root1}): the side-A vertices the first two trees miss.
inline Bitset remaining_side_a(const TwoColouring& c, const CoverFrame& f) {
    Bitset s = c.neighbours(f.root2, f.c2).complement();
    s.reset(f.root1.index);
    return s;
}

struct Case1Choice {
    VertexId tilde_v;
    bool swapped;
};

inline std::optional<Case1Choice> find_case1(const TwoColouring& c, const CoverState& s) {
    if (!s.populated) return std::nullopt;
    const CoverFrame f = CoverFrame::of(s);
    const CoverThresholds t(s.p, c.n1());
    const Bitset z2r = s.z2r.side(f.b()) - s.z2_unmatched.side(f.b());
    const Bitset z2b = s.z2b.side(f.b()) - s.z2_unmatched.side(f.b());
    // z2r/z2b are stored in the original colour frame; map to the working frame.
    const Bitset& z_c1 = f.c1 == Colour::Red ? z2r : z2b;
    const Bitset& z_c2 = f.c1 == Colour::Red ? z2b : z2r;
    const Bitset rest = remaining_side_a(c, f);
    for (std::size_t i = rest.find_first(); i != Bitset::npos; i = rest.find_next(i)) {
        VertexId v{f.a(), i};
        if (count_at_least(Bitset::intersect_count(c.neighbours(v, f.c2), z_c1), t.big)) return Case1Choice{v, false};
        if (count_at_least(Bitset::intersect_count(c.neighbours(v, f.c1), z_c2), t.big)) return Case1Choice{v, true};
    }
    return std::nullopt;
}

/// Randomises preferences on `jokers` (side `joker_side`) and reports the
/// attempt leaving the fewest `clients` without a neighbour whose preference
/// and connecting edge both match the client's own preference.
struct JokerDraw {
    Bitset primary;    // jokers preferring c1
    Bitset unmatched;  // clients left without a match
    std::size_t attempts = 0;
};

inline JokerDraw draw_jokers(const TwoColouring& c, const CoverFrame& f, Part joker_side, const Bitset& jokers,
                             const Bitset& clients_c1, const Bitset& clients_c2, const CounterRng& rng,
                             std::size_t retry_limit) {
    const Part client_side = opposite(joker_side);
    JokerDraw best;
    std::size_t best_misses = static_cast<std::size_t>(-1);
    for (std::size_t attempt = 0; attempt < retry_limit; ++attempt) {
        const CounterRng draw = rng.derive(attempt);
        Bitset primary(jokers.size());
        jokers.for_each([&](std::size_t i) {
            if (draw.coin(i)) primary.set(i);
        });
        const Bitset secondary = jokers - primary;
        Bitset unmatched(clients_c1.size());
        clients_c1.for_each([&](std::size_t i) {
            if (!c.neighbours({client_side, i}, f.c1).intersects(primary)) unmatched.set(i);
        });
        clients_c2.for_each([&](std::size_t i) {
            if (!c.neighbours({client_side, i}, f.c2).intersects(secondary)) unmatched.set(i);
        });
        const std::size_t misses = unmatched.count();
        if (misses < best_misses) {
            best_misses = misses;
            best.primary = std::move(primary);
            best.unmatched = std::move(unmatched);
        }
        best.attempts = attempt + 1;
        if (misses == 0) break;
    }
    return best;
}

inline VertexSet one_side(std::size_t n, Part p, Bitset bits) { return VertexSet::on_side(n, n, p, std::move(bits)); }

}  // namespace detail

/// Case of a state populated through the Z2 preferences. Case1 iff some
/// remaining side-A vertex has pn/100 cross-coloured neighbours in Z2^r or Z2^b
/// (first such vertex by index).
inline CoverCase classify_case(const BipartiteGraph& g, const TwoColouring& c, const CoverState& state) {
    if (!c.matches(g)) throw std::invalid_argument("colouring does not match graph");
    if (!state.populated) return CoverCase::SpanningMono;
    return detail::find_case1(c, state) ? CoverCase::Case1 : CoverCase::Case2;
}

/// Covers all but O(1/p) vertices by at most three vertex-disjoint
/// monochromatic trees. Throws PropertyFailure when the colouring has no
/// spanning monochromatic component and one of the heavy sets is empty or the
/// roots cannot be placed in opposite parts. The result always passes
/// validate_cover; bounding the uncovered set is left to the caller.
inline CoverResult almost_cover(const BipartiteGraph& g, const TwoColouring& c, const CoverParams& params) {
    params.validate();
    if (!g.balanced()) throw std::invalid_argument("almost_cover needs a balanced bipartite graph");
    if (!c.matches(g)) throw std::invalid_argument("colouring does not match graph");
    const std::size_t n = g.n1();
    using detail::one_side;

    CoverResult result;
    CoverState& s = result.state;
    s.p = params.p;
    TreeCover& cover = result.cover;
    cover.uncovered = VertexSet(n, n);
    const VertexSet everything = g.all_vertices();

    // Step 1: a spanning monochromatic component.
    for (Colour col : {Colour::Red, Colour::Blue}) {
        if (connected_within(c.view(col), everything)) {
            cover.trees.push_back(spanning_tree_of(c, col, everything));
            s.cover_case = CoverCase::SpanningMono;
            return result;
        }
    }

    // Step 2: heavy sets, d_c(v) > d(v)/3.
    s.v_red = VertexSet(n, n);
    s.v_blue = VertexSet(n, n);
    everything.for_each([&](VertexId v) {
        const std::size_t d = g.degree(v);
        if (3 * c.degree(v, Colour::Red) > d) s.v_red.insert(v);
        if (3 * c.degree(v, Colour::Blue) > d) s.v_blue.insert(v);
    });
    if (s.v_red.empty() || s.v_blue.empty())
        throw PropertyFailure("heavy-sets", std::string(s.v_red.empty() ? "V_R" : "V_B") +
                                                " is empty but no colour spans G");

    // Step 3: roots in opposite parts. Both orientations are considered and the
    // pair with the lower V1 vertex wins, so exchanging colours picks the same pair.
    struct RootPair {
        VertexId red, blue;
    };
    auto candidate = [&](Part red_part) -> std::optional<RootPair> {
        std::size_t r = s.v_red.side(red_part).find_first();
        std::size_t b = s.v_blue.side(opposite(red_part)).find_first();
        if (r == Bitset::npos || b == Bitset::npos) return std::nullopt;
        return RootPair{{red_part, r}, {opposite(red_part), b}};
    };
    auto key = [](const RootPair& rp) {
        const VertexId& in1 = rp.red.part == Part::P1 ? rp.red : rp.blue;
        const VertexId& in2 = rp.red.part == Part::P1 ? rp.blue : rp.red;
        return std::pair{in1.index, in2.index};
    };
    auto straight = candidate(Part::P1), swapped_parts = candidate(Part::P2);
    if (!straight && !swapped_parts)
        throw PropertyFailure("roots", "every heavy vertex lies in a single part");
    RootPair roots = straight && (!swapped_parts || key(*straight) <= key(*swapped_parts)) ? *straight : *swapped_parts;
    s.root_r = roots.red;
    s.root_b = roots.blue;

    // Step 4: majority colour between N_R(r) and N_B(b).
    {
        Bitset nr = c.neighbours(roots.red, Colour::Red);
        nr.reset(roots.blue.index);
        Bitset nb = c.neighbours(roots.blue, Colour::Blue);
        nb.reset(roots.red.index);
        const auto& red_rows = c.view(Colour::Red).rows(roots.red.part);
        const auto& blue_rows = c.view(Colour::Blue).rows(roots.red.part);
        const std::size_t e_red = detail::edges_between(red_rows, nb, nr);
        const std::size_t e_blue = detail::edges_between(blue_rows, nb, nr);
        s.majority_colour = e_red >= e_blue ? Colour::Red : Colour::Blue;
    }
    s.populated = true;
    const detail::CoverFrame f = detail::CoverFrame::of(s);
    const detail::CoverThresholds t(params.p, n);
    const Part A = f.a(), B = f.b();

    // Step 5: jokers J1, the sets Z2 / K2 and preferences on Z2.
    const Bitset nr = detail::primary_neighbourhood(c, f);    // side B
    const Bitset nb = detail::secondary_neighbourhood(c, f);  // side A
    Bitset j1(n);
    nb.for_each([&](std::size_t i) {
        if (count_greater(Bitset::intersect_count(c.neighbours({A, i}, f.c1), nr), t.j1)) j1.set(i);
    });
    Bitset z2(n), k2(n), z2_c1(n), z2_c2(n);
    Bitset rest_b = nr.complement();
    rest_b.reset(f.root2.index);
    rest_b.for_each([&](std::size_t i) {
        const VertexId z{B, i};
        if (!count_at_least(Bitset::intersect_count(g.neighbours(z), j1), t.z)) {
            k2.set(i);
            return;
        }
        z2.set(i);
        if (count_at_least(Bitset::intersect_count(c.neighbours(z, f.c1), j1), t.rho)) z2_c1.set(i);
        else z2_c2.set(i);
    });

    const auto draw = detail::draw_jokers(c, f, A, j1, z2_c1, z2_c2, CounterRng(params.seed, "rho"), params.retry_limit);
    const Bitset j1_c1 = draw.primary, j1_c2 = j1 - draw.primary;
    const Bitset z2_c1_ok = z2_c1 - draw.unmatched, z2_c2_ok = z2_c2 - draw.unmatched;
    s.rho_attempts = draw.attempts;

    s.j1 = one_side(n, A, j1);
    s.z2 = one_side(n, B, z2);
    s.k2 = one_side(n, B, k2);
    s.z2r = one_side(n, B, f.c1 == Colour::Red ? z2_c1 : z2_c2);
    s.z2b = one_side(n, B, f.c1 == Colour::Red ? z2_c2 : z2_c1);
    s.z2_unmatched = one_side(n, B, draw.unmatched);
    s.rho = PreferenceMap(n, n);
    s.rho.set(f.root1, f.c1);
    s.rho.set(f.root2, f.c2);
    s.rho.set_all(B, nr, f.c1);
    s.rho.set_all(A, nb, f.c2);
    s.rho.set_all(A, j1_c1, f.c1);
    s.rho.set_all(B, z2_c1, f.c1);
    s.rho.set_all(B, z2_c2, f.c2);
    draw.unmatched.for_each([&](std::size_t i) { s.rho.clear({B, i}); });

    k2.for_each([&](std::size_t i) { s.uncovered_reasons.push_back({{B, i}, UncoveredReason::K2}); });
    draw.unmatched.for_each([&](std::size_t i) { s.uncovered_reasons.push_back({{B, i}, UncoveredReason::RhoUnmatched}); });

    // Step 6 (assembled below, after the case split decides who leaves T_c1 / T_c2).
    const Bitset rest_a = detail::remaining_side_a(c, f);
    detail::TreeAssembler t1(f.c1, n, n), t2(f.c2, n, n);
    t1.root(f.root1);
    t2.root(f.root2);
    const VertexId root1 = f.root1, root2 = f.root2;
    nr.for_each([&](std::size_t i) { t1.attach({B, i}, root1); });
    t1.attach_all(c, A, j1_c1, nr);
    (nb - j1_c1).for_each([&](std::size_t i) { t2.attach({A, i}, root2); });

    auto case1 = detail::find_case1(c, s);
    s.cover_case = case1 ? CoverCase::Case1 : CoverCase::Case2;
    s.j2 = VertexSet(n, n);
    s.z1 = VertexSet(n, n);
    s.k1 = VertexSet(n, n);
    s.z1_unmatched = VertexSet(n, n);
    s.rho_prime = PreferenceMap(n, n);

    if (case1) {
        // Step 7: a third tree of colour `tc` rooted at ṽ, poaching J2 from the `oc` tree.
        s.tilde_v = case1->tilde_v;
        s.case1_swapped = case1->swapped;
        const Colour tc = case1->swapped ? f.c1 : f.c2;
        const Colour oc = swap_colour(tc);
        const Bitset& z2_oc = oc == f.c1 ? z2_c1_ok : z2_c2_ok;
        const Bitset j2 = c.neighbours(*s.tilde_v, tc) & z2_oc;  // side B
        Bitset z1(n), k1(n), z1_oc(n), z1_tc(n);
        Bitset candidates = rest_a;
        candidates.reset(s.tilde_v->index);
        candidates.for_each([&](std::size_t i) {
            const VertexId x{A, i};
            if (!count_at_least(Bitset::intersect_count(g.neighbours(x), j2), t.z)) {
                k1.set(i);
                return;
            }
            z1.set(i);
            if (count_at_least(Bitset::intersect_count(c.neighbours(x, oc), j2), t.rho)) z1_oc.set(i);
            else z1_tc.set(i);
        });
        // draw_jokers speaks in frame colours; express (oc, tc) as (c1, c2) or the reverse.
        const detail::CoverFrame local{oc, tc, f.root1, f.root2};
        const auto draw2 = detail::draw_jokers(c, local, B, j2, z1_oc, z1_tc,
                                               CounterRng(params.seed, "rho-prime"), params.retry_limit);
        const Bitset j2_oc = draw2.primary, j2_tc = j2 - draw2.primary;
        s.rho_prime_attempts = draw2.attempts;
        s.j2 = one_side(n, B, j2);
        s.z1 = one_side(n, A, z1);
        s.k1 = one_side(n, A, k1);
        s.z1_unmatched = one_side(n, A, draw2.unmatched);
        s.rho_prime.set(*s.tilde_v, tc);
        s.rho_prime.set_all(B, j2_oc, oc);
        s.rho_prime.set_all(B, j2_tc, tc);
        s.rho_prime.set_all(A, z1_oc, oc);
        s.rho_prime.set_all(A, z1_tc, tc);
        k1.for_each([&](std::size_t i) { s.uncovered_reasons.push_back({{A, i}, UncoveredReason::K1}); });
        draw2.unmatched.for_each(
            [&](std::size_t i) { s.uncovered_reasons.push_back({{A, i}, UncoveredReason::RhoPrimeUnmatched}); });

        detail::TreeAssembler t3(tc, n, n);
        t3.root(*s.tilde_v);
        const VertexId tilde = *s.tilde_v;
        j2_tc.for_each([&](std::size_t i) { t3.attach({B, i}, tilde); });
        t3.attach_all(c, A, z1_tc - draw2.unmatched, j2_tc);

        detail::TreeAssembler& t_oc = oc == f.c1 ? t1 : t2;
        detail::TreeAssembler& t_tc = oc == f.c1 ? t2 : t1;
        t_oc.attach_all(c, B, z2_oc - j2_tc, oc == f.c1 ? j1_c1 : j1_c2);
        t_tc.attach_all(c, B, oc == f.c1 ? z2_c2_ok : z2_c1_ok, oc == f.c1 ? j1_c2 : j1_c1);
        t_oc.attach_all(c, A, z1_oc - draw2.unmatched, j2_oc);

        cover.trees.push_back(std::move(t1).take());
        cover.trees.push_back(std::move(t2).take());
        cover.trees.push_back(std::move(t3).take());
    } else {
        // Step 8: hang every remaining side-A vertex off Z2 as a leaf.
        t1.attach_all(c, B, z2_c1_ok, j1_c1);
        t2.attach_all(c, B, z2_c2_ok, j1_c2);
        rest_a.for_each([&](std::size_t i) {
            const VertexId v{A, i};
            const std::size_t to1 = Bitset::intersect_count(c.neighbours(v, f.c1), z2_c1_ok);
            const std::size_t to2 = Bitset::intersect_count(c.neighbours(v, f.c2), z2_c2_ok);
            if (to1 == 0 && to2 == 0) {
                s.uncovered_reasons.push_back({v, UncoveredReason::NoAttachEdge});
                return;
            }
            const bool primary = to1 >= to2;
            const Bitset& parents = primary ? z2_c1_ok : z2_c2_ok;
            const Colour col = primary ? f.c1 : f.c2;
            s.rho.set(v, col);
            (primary ? t1 : t2).attach(v, {B, Bitset::first_common(c.neighbours(v, col), parents)});
        });
        cover.trees.push_back(std::move(t1).take());
        cover.trees.push_back(std::move(t2).take());
    }

    for (const auto& [v, reason] : s.uncovered_reasons) cover.uncovered.insert(v);
    if (auto report = validate_cover(g, c, cover); !report.ok())
        throw std::logic_error("almost_cover produced an invalid cover:\n" + report.str());
    return result;
}

/// Measured values against the bounds the construction's analysis claims
/// (each holds with high probability only). All entries are n/a for states
/// that stopped at the spanning shortcut.
inline AuditReport audit_state(const BipartiteGraph& g, const TwoColouring& c, const CoverParams& params,
                               const CoverState& s) {
    AuditReport report;
    const char* names[] = {"edge-density", "j1-size", "k2-size", "z2-matched", "k1-size",
                           "j2-size",      "z1-matched", "uncovered-200/p", "uncovered-100/p-case2"};
    const char* relations[] = {">=", ">=", "<=", "<=", "<=", ">=", "<=", "<=", "<="};
    if (!s.populated || !s.root_r || !s.root_b) {
        for (std::size_t k = 0; k < std::size(names); ++k) report.claims.push_back(detail::claim_na(names[k], relations[k]));
        return report;
    }
    const std::size_t n = g.n1();
    const detail::CoverFrame f = detail::CoverFrame::of(s);
    const detail::CoverThresholds t(params.p, n);
    const Bitset nr = detail::primary_neighbourhood(c, f);
    const Bitset nb = detail::secondary_neighbourhood(c, f);
    const std::size_t e_c1 = detail::edges_between(c.view(f.c1).rows(f.a()), nb, nr);
    const Rational density = params.p / Rational(4) * Rational(static_cast<std::int64_t>(nr.count())) *
                             Rational(static_cast<std::int64_t>(nb.count()));
    report.claims.push_back(detail::claim_at_least("edge-density", e_c1, density));
    report.claims.push_back(detail::claim_at_least("j1-size", s.j1.count(), t.big));
    report.claims.push_back(detail::claim_at_most("k2-size", s.k2.count(), t.small));
    report.claims.push_back(detail::claim_at_most("z2-matched", s.z2_unmatched.count(), Rational(0)));
    const bool case1 = s.cover_case == CoverCase::Case1;
    if (case1) {
        report.claims.push_back(detail::claim_at_most("k1-size", s.k1.count(), t.small));
        report.claims.push_back(detail::claim_at_least("j2-size", s.j2.count(), t.big));
        report.claims.push_back(detail::claim_at_most("z1-matched", s.z1_unmatched.count(), Rational(0)));
    } else {
        report.claims.push_back(detail::claim_na("k1-size", "<="));
        report.claims.push_back(detail::claim_na("j2-size", ">="));
        report.claims.push_back(detail::claim_na("z1-matched", "<="));
    }
    const std::size_t uncovered = s.uncovered_reasons.size();
    report.claims.push_back(detail::claim_at_most("uncovered-200/p", uncovered, t.uncovered));
    if (case1) report.claims.push_back(detail::claim_na("uncovered-100/p-case2", "<="));
    else report.claims.push_back(detail::claim_at_most("uncovered-100/p-case2", uncovered, t.small));
    return report;
}

}  // namespace monocover
