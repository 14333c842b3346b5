#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "monocover/graph.hpp"
#include "monocover/rational.hpp"

namespace monocover {

struct Seed {
    std::uint64_t value = 0;
    friend bool operator==(Seed, Seed) = default;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Stateless generator: the k-th draw is a pure function of (key, k), so any
/// subset of draws can be evaluated in any order or in parallel.
class CounterRng {
public:
    constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}
    CounterRng(Seed seed, std::string_view stream) noexcept : key_(splitmix64(seed.value ^ splitmix64(fnv1a(stream)))) {}

    constexpr std::uint64_t key() const noexcept { return key_; }

    constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
        return splitmix64(key_ ^ splitmix64(counter ^ 0x5bd1e9955bd1e995ULL));
    }
    /// Independent sub-stream, e.g. one per retry attempt.
    constexpr CounterRng derive(std::uint64_t tag) const noexcept { return CounterRng(splitmix64(key_ + splitmix64(tag))); }

    bool coin(std::uint64_t counter) const noexcept { return (at(counter) >> 63) != 0; }

    /// True with probability exactly floor(p * 2^64) / 2^64 (1 when p >= 1).
    bool bernoulli(std::uint64_t counter, const Rational& p) const noexcept {
        if (p.num() <= 0) return false;
        if (p.num() >= p.den()) return true;
        using u128 = unsigned __int128;
        u128 threshold = (u128(static_cast<std::uint64_t>(p.num())) << 64) / static_cast<std::uint64_t>(p.den());
        return u128(at(counter)) < threshold;
    }

    /// Uniform-ish integer in [0, bound) by multiply-shift.
    std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((u128(at(counter)) * bound) >> 64);
    }

private:
    std::uint64_t key_;
};

/// Seed for one trial of an experiment, hashed from its coordinates.
inline Seed trial_seed(Seed base, std::uint64_t n, std::uint64_t p_index, std::uint64_t trial) {
    std::uint64_t h = splitmix64(base.value);
    h = splitmix64(h ^ n);
    h = splitmix64(h ^ (p_index + 0x1000));
    h = splitmix64(h ^ (trial + 0x100000));
    return {h};
}

struct ModelParams {
    std::size_t n1 = 1;
    std::size_t n2 = 1;
    Rational p{1, 2};

    void validate() const {
        if (n1 < 1 || n2 < 1) throw std::invalid_argument("part sizes must be at least 1");
        if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("edge probability must lie in [0,1]");
    }
};

/// G(n1, n2, p). Slot (i, j) uses counter i*n2 + j of the "graph" stream.
inline BipartiteGraph sample_bipartite(const ModelParams& params, Seed seed) {
    params.validate();
    CounterRng rng(seed, "graph");
    GraphBuilder b(params.n1, params.n2);
    for (std::size_t i = 0; i < params.n1; ++i)
        for (std::size_t j = 0; j < params.n2; ++j)
            if (rng.bernoulli(i * params.n2 + j, params.p)) b.add_edge(i, j);
    return std::move(b).build();
}

/// Each edge independently red with probability `red_probability`.
inline TwoColouring sample_colouring(const BipartiteGraph& g, const Rational& red_probability, Seed seed) {
    if (red_probability < Rational(0) || red_probability > Rational(1))
        throw std::invalid_argument("red probability must lie in [0,1]");
    CounterRng rng(seed, "colour");
    const std::size_t n2 = g.n2();
    return TwoColouring(g, [&](std::size_t i, std::size_t j) { return rng.bernoulli(i * n2 + j, red_probability); });
}

/// Spanning subgraph of K_{n,n} with minimum degree >= ceil(fraction * n):
/// visits all n^2 edges in a seeded random order and deletes an edge whenever
/// both endpoints stay at or above the floor.
inline BipartiteGraph sample_mindeg_subgraph(std::size_t n, const Rational& min_degree_fraction, Seed seed) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (min_degree_fraction <= Rational(0) || min_degree_fraction > Rational(1))
        throw std::invalid_argument("min degree fraction must lie in (0,1]");
    const auto floor_deg = static_cast<std::size_t>((min_degree_fraction * Rational(static_cast<std::int64_t>(n))).ceil());
    CounterRng rng(seed, "mindeg");
    std::vector<std::uint32_t> order(n * n);
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.below(k, k)]);
    std::vector<bool> present(n * n, true);
    std::vector<std::size_t> deg1(n, n), deg2(n, n);
    for (auto slot : order) {
        std::size_t i = slot / n, j = slot % n;
        if (deg1[i] > floor_deg && deg2[j] > floor_deg) {
            present[slot] = false;
            --deg1[i];
            --deg2[j];
        }
    }
    GraphBuilder b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (present[i * n + j]) b.add_edge(i, j);
    return std::move(b).build();
}

}  // namespace monocover
