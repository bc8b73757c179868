#pragma once

#include <cstdint>
#include <random>

namespace ptsbo {

// All stochastic components draw from this engine. libstdc++'s distributions
// are deterministic for a given engine state, which is what the reproducibility
// contract relies on.
using Rng = std::mt19937_64;

// Derives an independent stream from a base seed and a stream tag.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

inline double uniform01(Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return unif(rng);
}

}  // namespace ptsbo
