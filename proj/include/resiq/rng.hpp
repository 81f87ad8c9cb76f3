#pragma once

#include <cstdint>

namespace resiq {

/// splitmix64 step; used only to expand seeds into generator state.
inline std::uint64_t splitmix64_next(std::uint64_t& state)
{
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic pseudo-random stream (xoshiro256**).
///
/// Stream k of a master seed is derived by hashing (seed, k), so any
/// trajectory can be reproduced in isolation and trajectories never share
/// state. Draw sequences are identical across platforms and thread counts.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream = 0)
    {
        std::uint64_t sm = master_seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
        for (auto& word : state_) {
            word = splitmix64_next(sm);
        }
        // splitmix64 output is never four zero words in a row, but keep the
        // generator well-defined regardless.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 0x9e3779b97f4a7c15ULL;
        }
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw on the open interval (0, 1); never exactly 0 or 1,
    /// so inverse-transform sampling stays inside quantile domains.
    double next_uniform()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

} // namespace resiq
