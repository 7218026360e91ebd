#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rgc {

/// Identifies one reproducible random stream. Distinct (master_seed,
/// stream_index) pairs are mixed through SplitMix64 before seeding, so
/// neighbouring indices give unrelated streams.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    bool operator==(const SeedSpec&) const = default;
};

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Order-dependent combination of two 64-bit values.
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

/// FNV-1a of a string, used to turn experiment names into stream keys.
std::uint64_t hash_string(std::string_view s);

Engine make_engine(const SeedSpec& seed);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Poisson(mean) variate. Sequential inversion for mean <= 30, Hörmann's
/// PTRS transformed rejection above.
std::uint64_t poisson_variate(Engine& eng, double mean);

}  // namespace rgc
