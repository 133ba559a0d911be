#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace pcert {

// MT19937 with the 2002 initialization (init_genrand / init_by_array).
// Written out rather than taken from <random> because the array-seeded
// reference vectors need init_by_array, which std::mt19937 does not provide.
class Mt19937 {
public:
    static constexpr std::size_t state_size = 624;

    explicit Mt19937(std::uint32_t seed = 5489u) { seed_with(seed); }
    explicit Mt19937(std::span<const std::uint32_t> key) { seed_with(key); }

    void seed_with(std::uint32_t seed);
    void seed_with(std::span<const std::uint32_t> key);

    std::uint32_t next_u32()
    {
        if (index_ >= state_size) twist();
        std::uint32_t y = state_[index_++];
        y ^= y >> 11;
        y ^= (y << 7) & 0x9d2c5680u;
        y ^= (y << 15) & 0xefc60000u;
        y ^= y >> 18;
        return y;
    }

    // next_u32() / 2^32, in [0,1) with 32-bit resolution
    double next_unit() { return next_u32() * (1.0 / 4294967296.0); }

    const std::array<std::uint32_t, state_size>& state() const { return state_; }
    std::size_t index() const { return index_; }

private:
    void twist();

    std::array<std::uint32_t, state_size> state_{};
    std::size_t index_ = state_size;
};

}  // namespace pcert
