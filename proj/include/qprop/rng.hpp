#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace qprop {

/// 64-bit finalizer of the SplitMix64 generator. Used as the mixing step for
/// sub-seed derivation so that seed streams are reproducible across platforms.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a over a string, for turning names/signatures into seed parts.
std::uint64_t hash_string(std::string_view s);

/// Derives a sub-seed from a base seed and a list of context parts.
///
/// The rule is pinned: h = base, then for each part p,
/// h = mix64(h ^ mix64(p + 0x9e3779b97f4a7c15)). All seed plumbing in the
/// toolkit (input generators, per-copy sampling seeds, sweep rows) goes
/// through this function, which is what makes runs reproducible and
/// independent of scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

/// xoshiro256++ with SplitMix64 state expansion (the reference seeding
/// procedure). Integer outputs are bit-portable; double conversion uses the
/// top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_double();

    /// Uniform integer in [0, bound), bound >= 1. Unbiased (rejection).
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform integer in [low, high], inclusive.
    std::int64_t next_int(std::int64_t low, std::int64_t high);

    /// Standard normal via Box-Muller.
    double next_gaussian();

private:
    std::uint64_t state_[4];
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

} // namespace qprop
