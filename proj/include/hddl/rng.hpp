#pragma once

#include <cstdint>
#include <random>

// Deterministic random streams.
//
// Every stream is a std::mt19937_64 (whose output sequence is fixed by the
// C++ standard) seeded with SplitMix64(seed XOR stream tag). Conversions to
// doubles and bounded integers are done here rather than through the
// <random> distributions, whose output is implementation-defined.

namespace hddl::rng {

enum class Stream : std::uint64_t {
  positions = 0x706f736974696f6eULL,  // "position"
  pairs = 0x7061697273000000ULL,      // "pairs"
};

using Engine = std::mt19937_64;

/// One SplitMix64 step; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes two words into one, order-sensitive.
std::uint64_t mix(std::uint64_t a, std::uint64_t b);

Engine make_stream(std::uint64_t seed, Stream stream);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Engine& eng);

/// Uniform integer in [0, n), unbiased. n must be positive.
std::uint64_t uniform_index(Engine& eng, std::uint64_t n);

}  // namespace hddl::rng
