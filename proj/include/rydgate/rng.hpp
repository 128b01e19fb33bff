#pragma once

#include <cstdint>
#include <random>

namespace rydgate {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream key for (master seed, item index, channel). Streams for different
// keys are independent of how items are distributed over workers.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t channel = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ index) ^ (channel * 0xd1b54a32d192ed03ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index, std::uint64_t channel = 0) {
  return Rng(derive_seed(master, index, channel));
}

}  // namespace rydgate
