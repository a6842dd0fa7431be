#pragma once

#include <array>
#include <cstdint>

namespace coles {

__extension__ using uint128 = unsigned __int128;


inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
    state += kGoldenGamma;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** generator.
///
/// Streams are keyed by (seed, key): the four state words are successive
/// splitmix64 outputs starting from seed ^ (key * golden gamma). All derived
/// draws below are defined bit-exactly so other implementations can
/// reproduce them.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t key = 0) noexcept
    {
        std::uint64_t sm = seed ^ (key * kGoldenGamma);
        for (auto& word : s_)
            word = splitmix64(sm);
    }

    std::uint64_t next() noexcept
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Integer in [0, bound) by 128-bit multiply-shift (no rejection).
    std::uint64_t bounded(std::uint64_t bound) noexcept
    {
        return static_cast<std::uint64_t>((static_cast<uint128>(next()) * bound) >> 64);
    }

    /// Double in [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Double in (0, 1].
    double uniform_open0() noexcept
    {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal by Box-Muller; consumes two draws and discards the
    /// second variate so every call has the same stream footprint.
    double normal() noexcept;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

/// Stream domains keep different consumers of one master seed apart.
enum class StreamDomain : std::uint64_t {
    negative_graph = 0,
    split = 1ULL << 40,
    kmeans = 2ULL << 40,
    sbm_edges = 3ULL << 40,
    sbm_features = 4ULL << 40,
    power_iteration = 5ULL << 40,
    feature_hash = 6ULL << 40,
};

inline Rng keyed_rng(std::uint64_t seed, StreamDomain domain, std::uint64_t k) noexcept
{
    return Rng(seed, static_cast<std::uint64_t>(domain) + k);
}

} // namespace coles
