#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace ptsbo {

inline constexpr std::array<int, 30> kHaltonPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                                      31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                                      73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

inline double radical_inverse(long index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

/// Coordinate `dim` of the `index`-th Halton point (index >= 1).
inline double halton(long index, int dim) {
  if (dim < 0 || dim >= static_cast<int>(kHaltonPrimes.size())) {
    throw std::invalid_argument("Halton sequence supports at most " + std::to_string(kHaltonPrimes.size()) +
                                " dimensions");
  }
  return radical_inverse(index, kHaltonPrimes[static_cast<size_t>(dim)]);
}

}  // namespace ptsbo
