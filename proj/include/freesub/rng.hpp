#pragma once

#include <cstdint>

namespace freesub {

/**
 * SplitMix64 pseudo-random generator.
 *
 * All randomness in the library flows through this generator so that a seed
 * fully determines every sampled report, independent of platform or standard
 * library.  The update is the reference SplitMix64 step (Steele, Lea and
 * Flood): state += 0x9e3779b97f4a7c15, followed by two xor-shift-multiply
 * mixing rounds.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish draw in [0, n).  n must be positive.  Computed as
  /// next() mod n; the modulo bias is irrelevant at the sizes used here
  /// and keeps the stream trivially reproducible.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  /// Derive an independent stream for a named sub-task.
  Rng split(std::uint64_t salt) {
    Rng r(next() ^ (salt * 0x9e3779b97f4a7c15ULL));
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace freesub
