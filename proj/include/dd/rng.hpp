#pragma once

#include <cstdint>

namespace dd {

// SplitMix64 (Steele, Lea, Flood). Chosen for portability: identical output
// on every platform, trivially splittable into independent per-instance
// streams. The uniform mappings below avoid std:: distributions, whose
// sequences are implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Unbiased draw from [0, bound), bound >= 1 (Lemire's rejection method).
  std::uint64_t below(std::uint64_t bound);

  // Inclusive range [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi);

  double uniform01();       // [0, 1), 53-bit resolution
  double uniform_open01();  // (0, 1)

  // Stream derivation for instance `index` of a run seeded with `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

}  // namespace dd
