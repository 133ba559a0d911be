#include "pcert/rng.hpp"

namespace pcert {

namespace {
constexpr std::size_t N = Mt19937::state_size;
constexpr std::size_t M = 397;
constexpr std::uint32_t matrix_a = 0x9908b0dfu;
constexpr std::uint32_t upper_mask = 0x80000000u;
constexpr std::uint32_t lower_mask = 0x7fffffffu;
}  // namespace

void Mt19937::seed_with(std::uint32_t seed)
{
    state_[0] = seed;
    for (std::size_t i = 1; i < N; ++i)
        state_[i] = 1812433253u * (state_[i - 1] ^ (state_[i - 1] >> 30)) + static_cast<std::uint32_t>(i);
    index_ = N;
}

void Mt19937::seed_with(std::span<const std::uint32_t> key)
{
    seed_with(19650218u);
    std::size_t i = 1, j = 0;
    const std::size_t len = key.size();
    for (std::size_t k = N > len ? N : len; k; --k) {
        state_[i] = (state_[i] ^ ((state_[i - 1] ^ (state_[i - 1] >> 30)) * 1664525u)) + key[j] +
                    static_cast<std::uint32_t>(j);
        ++i;
        ++j;
        if (i >= N) {
            state_[0] = state_[N - 1];
            i = 1;
        }
        if (j >= len) j = 0;
    }
    for (std::size_t k = N - 1; k; --k) {
        state_[i] = (state_[i] ^ ((state_[i - 1] ^ (state_[i - 1] >> 30)) * 1566083941u)) -
                    static_cast<std::uint32_t>(i);
        ++i;
        if (i >= N) {
            state_[0] = state_[N - 1];
            i = 1;
        }
    }
    state_[0] = 0x80000000u;
    index_ = N;
}

void Mt19937::twist()
{
    auto mix = [](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        std::uint32_t y = (a & upper_mask) | (b & lower_mask);
        return c ^ (y >> 1) ^ ((y & 1u) ? matrix_a : 0u);
    };
    std::size_t k = 0;
    for (; k < N - M; ++k) state_[k] = mix(state_[k], state_[k + 1], state_[k + M]);
    for (; k < N - 1; ++k) state_[k] = mix(state_[k], state_[k + 1], state_[k + M - N]);
    state_[N - 1] = mix(state_[N - 1], state_[0], state_[M - 1]);
    index_ = 0;
}

}  // namespace pcert
