#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dpercol {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to fold seeds and indices into stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-sensitive hash of a seed and any number of indices.
template <typename... Ts>
std::uint64_t derive_key(std::uint64_t seed, Ts... parts) noexcept {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(parts) + 0x9e3779b97f4a7c15ULL))), ...);
    return h;
}

/// Domain tags separating the sub-streams a trial draws from.
enum class Purpose : std::uint64_t { sequence = 1, matching = 2, percolation = 3, retry = 4 };

/// Counter-based random stream. The state is a (key, counter) pair, so any
/// draw can be addressed directly by index and streams never share state.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return to_unit((*this)()); }

    /// Unbiased integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

    /// Stateless access: the 64-bit word number `index` of stream `key`.
    static std::uint64_t bits_at(std::uint64_t key, std::uint64_t index) noexcept;
    static double uniform_at(std::uint64_t key, std::uint64_t index) noexcept {
        return to_unit(bits_at(key, index));
    }

    static constexpr double to_unit(std::uint64_t bits) noexcept {
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_ = 0;
};

} // namespace dpercol
