#pragma once
#include <cstdint>

namespace nlos::core {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// splitmix64 stream. Streams are derived by hashing (seed, laser, path),
/// so every path owns an independent, order-free random sequence and
/// results do not depend on thread scheduling.
class Rng {
public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  static Rng for_path(std::uint64_t seed, std::uint64_t laser_index, std::uint64_t path_index) {
    return Rng(mix64(mix64(seed) ^ mix64((laser_index << 32) ^ path_index)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

} // namespace nlos::core
