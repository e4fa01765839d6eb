#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ronin {

// FNV-1a over raw bytes. Used for mock fill colors, mock embedding seeds
// and per-pass seed derivation, so the exact constants matter.
constexpr std::uint32_t kFnv32Basis = 0x811c9dc5u;
constexpr std::uint32_t kFnv32Prime = 0x01000193u;
constexpr std::uint64_t kFnv64Basis = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnv64Prime = 0x100000001b3ull;

constexpr std::uint32_t fnv1a32(std::span<const std::uint8_t> bytes,
                                std::uint32_t h = kFnv32Basis) {
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= kFnv32Prime;
  }
  return h;
}

constexpr std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                                std::uint64_t h = kFnv64Basis) {
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= kFnv64Prime;
  }
  return h;
}

inline std::uint32_t fnv1a32(std::string_view s) {
  return fnv1a32({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

inline std::uint64_t fnv1a64(std::string_view s) {
  return fnv1a64({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

inline std::uint64_t fnv1a64_append(std::uint64_t h, std::string_view s) {
  return fnv1a64({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}, h);
}

inline std::uint64_t fnv1a64_append(std::uint64_t h, std::uint64_t value_le) {
  std::uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(value_le >> (8 * i));
  return fnv1a64({b, 8}, h);
}

// splitmix64: tiny portable PRNG. std::mt19937 would do, but the normal
// distribution below must produce identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]; never returns 0 so it is safe under log()
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal via Box-Muller
  double next_normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::uint64_t state_;
};

// Deterministic pseudo-random unit vector for the mock encoders.
inline std::vector<double> seeded_unit_vector(std::uint64_t seed, std::size_t dim) {
  SplitMix64 rng(seed);
  std::vector<double> v(dim);
  double norm2 = 0.0;
  for (auto& x : v) {
    x = rng.next_normal();
    norm2 += x * x;
  }
  if (norm2 == 0.0) {  // astronomically unlikely; keep the invariant anyway
    v[0] = 1.0;
    norm2 = 1.0;
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

}  // namespace ronin
