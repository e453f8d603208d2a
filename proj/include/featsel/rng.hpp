#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace featsel {

// Bounded draw and shuffle built directly on mt19937_64 output so results
// are identical across standard-library implementations.
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_rand(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace featsel
