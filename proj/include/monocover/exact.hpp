#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <atomic>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "monocover/components.hpp"
#include "monocover/errors.hpp"
#include "monocover/graph.hpp"

namespace monocover {

/// One monochromatic component (or part) of a witness; colour is an index 0..r-1.
struct ColouredSet {
    unsigned colour = 0;
    VertexSet vertices;
};

struct ExactResult {
    bool feasible = true;
    std::size_t value = 0;
    std::vector<ColouredSet> witness;
    std::uint64_t nodes_explored = 0;
};

/// Every monochromatic component of every colour, singletons included.
inline std::vector<ColouredSet> all_monochromatic_components(const BipartiteGraph& g, const RColouring& c) {
    std::vector<ColouredSet> out;
    const VertexSet everything = g.all_vertices();
    for (unsigned col = 0; col < c.colours(); ++col) {
        auto rows = c.class_rows(col);
        AdjacencyView view{&rows.first, &rows.second};
        for (auto& comp : components_within(view, everything)) out.push_back({col, std::move(comp)});
    }
    return out;
}

namespace detail {

inline Bitset to_global(const VertexSet& s) {
    Bitset out(s.n1() + s.n2());
    s.side(Part::P1).for_each([&](std::size_t i) { out.set(i); });
    s.side(Part::P2).for_each([&](std::size_t j) { out.set(s.n1() + j); });
    return out;
}

/// Exact minimum set cover by depth-first branch and bound.
class SetCoverSearch {
public:
    SetCoverSearch(std::vector<Bitset> sets, std::size_t universe) : sets_(std::move(sets)), n_(universe), holders_(universe) {
        for (std::size_t s = 0; s < sets_.size(); ++s) sets_[s].for_each([&](std::size_t v) { holders_[v].push_back(s); });
        order_.resize(n_);
        for (std::size_t v = 0; v < n_; ++v) order_[v] = v;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return holders_[a].size() < holders_[b].size(); });
    }

    std::vector<std::size_t> solve() {
        best_ = greedy();
        std::vector<std::size_t> chosen;
        Bitset covered(n_);
        dfs(covered, chosen);
        return best_;
    }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    std::vector<std::size_t> greedy() const {
        std::vector<std::size_t> pick;
        Bitset covered(n_);
        while (covered.count() < n_) {
            std::size_t best = 0, gain = 0;
            for (std::size_t s = 0; s < sets_.size(); ++s) {
                std::size_t g = sets_[s].count() - Bitset::intersect_count(sets_[s], covered);
                if (g > gain) {
                    gain = g;
                    best = s;
                }
            }
            pick.push_back(best);
            covered |= sets_[best];
        }
        return pick;
    }

    /// Uncovered vertices no two of which share a set; each needs its own set.
    std::size_t lower_bound(const Bitset& covered) {
        blocked_.assign(sets_.size(), false);
        std::size_t lb = 0;
        for (std::size_t v : order_) {
            if (covered.test(v)) continue;
            bool free = true;
            for (auto s : holders_[v])
                if (blocked_[s]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            ++lb;
            for (auto s : holders_[v]) blocked_[s] = true;
        }
        return lb;
    }

    void dfs(const Bitset& covered, std::vector<std::size_t>& chosen) {
        ++nodes_;
        if (covered.count() == n_) {
            if (chosen.size() < best_.size()) best_ = chosen;
            return;
        }
        if (chosen.size() + lower_bound(covered) >= best_.size()) return;
        std::size_t pivot = n_;
        for (std::size_t v : order_)
            if (!covered.test(v)) {
                pivot = v;
                break;
            }
        std::vector<std::size_t> options = holders_[pivot];
        auto gain = [&](std::size_t s) { return sets_[s].count() - Bitset::intersect_count(sets_[s], covered); };
        std::sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) { return gain(a) > gain(b); });
        for (auto s : options) {
            chosen.push_back(s);
            dfs(covered | sets_[s], chosen);
            chosen.pop_back();
        }
    }

    std::vector<Bitset> sets_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> holders_;
    std::vector<std::size_t> order_;
    std::vector<bool> blocked_;
    std::vector<std::size_t> best_;
    std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Minimum number of monochromatic components covering V(G). Components
/// contained in another component are discarded before the search.
inline ExactResult tc_exact(const BipartiteGraph& g, const RColouring& c) {
    if (c.n1() != g.n1() || c.n2() != g.n2()) throw std::invalid_argument("colouring does not match graph");
    ExactResult result;
    if (g.vertex_count() == 0) return result;
    auto comps = all_monochromatic_components(g, c);
    std::vector<Bitset> global;
    global.reserve(comps.size());
    for (const auto& comp : comps) global.push_back(detail::to_global(comp.vertices));
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < global.size(); ++a) {
        bool dominated = false;
        for (std::size_t b = 0; b < global.size() && !dominated; ++b) {
            if (a == b || !global[a].is_subset_of(global[b])) continue;
            // equal sets: keep the lower index only
            dominated = global[a] != global[b] || b < a;
        }
        if (!dominated) kept.push_back(a);
    }
    std::vector<Bitset> sets;
    for (auto k : kept) sets.push_back(global[k]);
    detail::SetCoverSearch search(std::move(sets), g.vertex_count());
    auto pick = search.solve();
    result.value = pick.size();
    result.nodes_explored = search.nodes();
    for (auto s : pick) result.witness.push_back(comps[kept[s]]);
    return result;
}

inline ExactResult tc_exact(const BipartiteGraph& g, const TwoColouring& c) { return tc_exact(g, RColouring::from(g, c)); }

inline constexpr std::size_t kTpVertexLimit = 16;
inline constexpr std::size_t kTpForcedLimit = 24;

/// Minimum number of vertex-disjoint sets, each connected in one colour,
/// partitioning V(G). Memoised search over the remaining-vertex mask.
inline ExactResult tp_exact(const BipartiteGraph& g, const TwoColouring& c, bool allow_singletons = true,
                            bool force = false) {
    const std::size_t n = g.vertex_count();
    if (n > (force ? kTpForcedLimit : kTpVertexLimit))
        throw TooLargeError("tp_exact: " + std::to_string(n) + " vertices exceeds the search limit");
    ExactResult result;
    if (n == 0) return result;
    using Mask = std::uint32_t;
    const std::size_t n1 = g.n1();
    std::array<std::vector<Mask>, 2> adj{std::vector<Mask>(n, 0), std::vector<Mask>(n, 0)};
    for (const auto& e : g.edges()) {
        auto col = static_cast<std::size_t>(c.colour(e));
        adj[col][e.i] |= Mask{1} << (n1 + e.j);
        adj[col][n1 + e.j] |= Mask{1} << e.i;
    }
    auto connected = [&](std::size_t col, Mask s) {
        Mask seen = s & (~s + 1), frontier = seen;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= adj[col][static_cast<std::size_t>(std::countr_zero(f))];
            next &= s & ~seen;
            seen |= next;
            frontier = next;
        }
        return seen == s;
    };
    auto component_of = [&](std::size_t col, std::size_t v) {
        Mask seen = Mask{1} << v, frontier = seen;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= adj[col][static_cast<std::size_t>(std::countr_zero(f))];
            next &= ~seen;
            seen |= next;
            frontier = next;
        }
        return seen;
    };
    std::array<std::vector<Mask>, 2> comp{std::vector<Mask>(n), std::vector<Mask>(n)};
    for (std::size_t col = 0; col < 2; ++col)
        for (std::size_t v = 0; v < n; ++v) comp[col][v] = component_of(col, v);

    constexpr std::uint8_t kUnknown = 0xFF, kInfeasible = 0xFE;
    const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<std::uint8_t> memo(std::size_t{1} << n, kUnknown);
    std::vector<Mask> choice(std::size_t{1} << n, 0);
    std::vector<std::uint8_t> choice_colour(std::size_t{1} << n, 0);
    memo[0] = 0;

    auto solve = [&](auto&& self, Mask rem) -> std::uint8_t {
        if (memo[rem] != kUnknown) return memo[rem];
        ++result.nodes_explored;
        const Mask low = rem & (~rem + 1);
        const auto v = static_cast<std::size_t>(std::countr_zero(low));
        std::uint8_t best = kInfeasible;
        auto consider = [&](Mask s, std::uint8_t col) {
            std::uint8_t sub = self(self, rem & ~s);
            if (sub != kInfeasible && sub + 1 < best) {
                best = static_cast<std::uint8_t>(sub + 1);
                choice[rem] = s;
                choice_colour[rem] = col;
            }
        };
        if (allow_singletons) consider(low, 0);
        for (std::uint8_t col = 0; col < 2; ++col) {
            const Mask pool = comp[col][v] & rem & ~low;
            for (Mask sub = pool; sub; sub = (sub - 1) & pool) {
                Mask s = sub | low;
                if (connected(col, s)) consider(s, col);
            }
        }
        memo[rem] = best;
        return best;
    };
    std::uint8_t value = solve(solve, full);
    if (value == kInfeasible) {
        result.feasible = false;
        return result;
    }
    result.value = value;
    for (Mask rem = full; rem;) {
        Mask s = choice[rem];
        ColouredSet part{choice_colour[rem], VertexSet(g.n1(), g.n2())};
        for (Mask f = s; f; f &= f - 1) {
            auto k = static_cast<std::size_t>(std::countr_zero(f));
            part.vertices.insert(k < n1 ? VertexId{Part::P1, k} : VertexId{Part::P2, k - n1});
        }
        result.witness.push_back(std::move(part));
        rem &= ~s;
    }
    return result;
}

struct KnnReport {
    std::size_t n = 0;
    unsigned r = 0;
    std::size_t bound = 0;
    std::uint64_t colourings_checked = 0;
    std::size_t max_tc = 0;
    std::vector<std::uint64_t> histogram;    // histogram[k] = colourings with tc = k
    std::uint64_t violation_count = 0;
    std::vector<std::uint64_t> violations;   // colouring codes with tc > bound (first kMaxListed)
    static constexpr std::size_t kMaxListed = 64;
};

inline constexpr std::uint64_t kKnnColouringLimit = std::uint64_t{1} << 20;

/// The r-colouring of K_{n,n} encoded by `code`: slot i*n + j takes base-r digit i*n + j.
inline RColouring knn_colouring(const BipartiteGraph& knn, unsigned r, std::uint64_t code) {
    RColouring c(knn, r);
    const std::size_t n = knn.n1();
    for (std::size_t slot = 0; slot < n * n; ++slot) {
        c.set(slot / n, slot % n, static_cast<unsigned>(code % r));
        code /= r;
    }
    return c;
}

/// Runs tc_exact on every r-colouring of K_{n,n}. Shards are contiguous code
/// ranges, merged in shard order.
inline KnnReport exhaustive_knn_check(std::size_t n, unsigned r, std::size_t bound, unsigned threads = 1,
                                      bool force = false) {
    if (n < 1 || r < 1) throw std::invalid_argument("n and r must be positive");
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < n * n; ++k) {
        if (total > kKnnColouringLimit * std::uint64_t{r}) throw TooLargeError("exhaustive_knn_check: too many colourings");
        total *= r;
    }
    if (total > kKnnColouringLimit && !force)
        throw TooLargeError("exhaustive_knn_check: " + std::to_string(total) + " colourings exceeds the limit");
    const BipartiteGraph knn = BipartiteGraph::complete(n, n);
    threads = std::max(1u, threads);
    std::vector<KnnReport> shards(threads);
    auto work = [&](unsigned shard) {
        KnnReport& rep = shards[shard];
        rep.histogram.assign(2 * n + 1, 0);
        const std::uint64_t lo = total * shard / threads, hi = total * (shard + 1) / threads;
        for (std::uint64_t code = lo; code < hi; ++code) {
            auto tc = tc_exact(knn, knn_colouring(knn, r, code)).value;
            ++rep.colourings_checked;
            ++rep.histogram[tc];
            rep.max_tc = std::max(rep.max_tc, tc);
            if (tc > bound) {
                ++rep.violation_count;
                if (rep.violations.size() < KnnReport::kMaxListed) rep.violations.push_back(code);
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& t : pool) t.join();
    }
    KnnReport out;
    out.n = n;
    out.r = r;
    out.bound = bound;
    out.histogram.assign(2 * n + 1, 0);
    for (const auto& s : shards) {
        out.colourings_checked += s.colourings_checked;
        out.max_tc = std::max(out.max_tc, s.max_tc);
        for (std::size_t k = 0; k < s.histogram.size(); ++k) out.histogram[k] += s.histogram[k];
        out.violation_count += s.violation_count;
        for (auto code : s.violations)
            if (out.violations.size() < KnnReport::kMaxListed) out.violations.push_back(code);
    }
    return out;
}

}  // namespace monocover
