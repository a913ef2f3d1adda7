// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace brank {

/// Task kinds for seed derivation. Every random stream is a pure function of
/// (user seed, kind, indices).
enum class StreamKind : std::uint64_t {
    generate = 1,
    contraction = 2,
    reduction = 3,
    probe_sample = 4,
    probe_prime = 5,
    cp_init = 6,
    phylo_params = 7,
    membership = 8,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, StreamKind kind, std::initializer_list<std::uint64_t> indices = {}) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(kind)));
    for (std::uint64_t i : indices) h = splitmix64(h ^ splitmix64(i + 0x632be59bd9b4e019ULL));
    return h;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, StreamKind kind, std::initializer_list<std::uint64_t> indices = {}) {
    return Rng(derive_seed(seed, kind, indices));
}

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace brank
