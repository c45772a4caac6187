#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace fclt {

// Counter-based generator (Philox4x32-10, Salmon et al. SC'11).
//
// A stream is identified by (seed, stream id). Replicate r of a campaign uses
// stream r, so the values it sees do not depend on how replicates are
// scheduled across threads.
class Philox4x32 {
  public:
    using result_type = std::uint64_t;
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    // Skip n 64-bit outputs.
    void discard(std::uint64_t n) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    // The raw bijection: ten rounds of the Philox S-box on one counter block.
    static Counter block(Counter ctr, Key key) noexcept;

  private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    unsigned pos_ = 2;
};

// SplitMix64 finalizer applied to (seed, tag); used to derive independent
// seeds for the sub-experiments of a campaign.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

// Uniform on the open interval (0, 1) with 53 random bits.
inline double uniform_open01(Philox4x32& rng) noexcept
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_exponential(Philox4x32& rng) noexcept;

// Box-Muller; consumes exactly two uniforms per call.
double standard_normal(Philox4x32& rng) noexcept;

}  // namespace fclt
