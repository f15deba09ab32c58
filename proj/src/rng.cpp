#include "dpercol/rng.hpp"

#include "dpercol/error.hpp"

namespace dpercol {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_sequence: return "invalid-sequence";
    case ErrorKind::not_graphical: return "not-graphical";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::repair_failure: return "repair-failure";
    case ErrorKind::imbalance: return "imbalance";
    case ErrorKind::invalid_distribution: return "invalid-distribution";
    case ErrorKind::degree_mismatch: return "degree-mismatch";
    case ErrorKind::attempts_exhausted: return "attempts-exhausted";
    case ErrorKind::zero_mean_degree: return "zero-mean-degree";
    case ErrorKind::zero_mu11: return "zero-mu11";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::max_iters_exceeded: return "max-iters-exceeded";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t Stream::bits_at(std::uint64_t key, std::uint64_t index) noexcept {
    // One Philox block yields two words; index/2 selects the block.
    const std::uint64_t block = index >> 1;
    const auto out = philox4x32(
        {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), 0u, 0u},
        {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)});
    if (index & 1)
        return (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::uint64_t Stream::operator()() noexcept {
    const std::uint64_t index = counter_++;
    if (index & 1)
        return spare_;
    const std::uint64_t block = index >> 1;
    const auto out = philox4x32(
        {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), 0u, 0u},
        {static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)});
    spare_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::uint64_t Stream::below(std::uint64_t bound) noexcept {
    // Lemire's multiply-and-reject.
    std::uint64_t x = (*this)();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = (*this)();
            m = static_cast<unsigned __int128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

} // namespace dpercol
