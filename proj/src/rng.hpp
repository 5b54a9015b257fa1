#pragma once

#include <cstdint>

namespace ccnorm {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Sub-seed for cell (a, b) of a sweep seeded with `seed`; independent of the
/// order in which cells are visited.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept
{
    return mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) + mix64(a + 0x9e3779b97f4a7c15ULL) * 3 + b);
}

/// Counter-based generator: output n is mix64(key + (n + 1) * golden), so a
/// stream is fully determined by its key. Normals use Box-Muller.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform on (0, 1].
    double uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    /// Uniform integer in [0, n), unbiased.
    std::uint64_t below(std::uint64_t n) noexcept;

    double normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ccnorm
