#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace urig {

using Engine = std::mt19937_64;

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed and a tuple of
// coordinates (cell parameters, trial index, stream tag). The result depends
// only on the inputs, never on execution order.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : parts) {
    h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  }
  return h;
}

// Seeds are expected to be well mixed already (see derive_seed).
inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

}  // namespace urig
