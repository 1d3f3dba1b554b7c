#pragma once

#include <cstdint>
#include <random>

namespace fdv {

// splitmix64; used to derive independent per-trial RNG streams from one seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial_index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial_index)));
}

// Log-uniform sample in (lo, hi); G/H means are scale-sensitive and uniform
// sampling under-covers small values.
inline double sample_log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline double sample_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

} // namespace fdv
