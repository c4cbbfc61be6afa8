#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lanegeo {

/// 64-bit FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view text);

/// Independent deterministic stream for (seed, key, index). Streams for
/// different keys or indices share no state, so draws may run in any order.
std::mt19937_64 make_stream(std::uint64_t seed, std::string_view key, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);

}  // namespace lanegeo
