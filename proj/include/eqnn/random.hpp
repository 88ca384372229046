#pragma once

#include <cstdint>

namespace eqnn {

/// Independent sub-seed for a named stream of a run (data, init, shuffle...),
/// via the splitmix64 finalizer.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum SeedStream : std::uint64_t {
  kTrainDataStream = 1,
  kTestDataStream = 2,
  kInitStream = 3,
  kShuffleStream = 4,
};

}  // namespace eqnn
