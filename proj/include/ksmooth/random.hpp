#pragma once

#include <cstdint>
#include <random>

#include "ksmooth/scalar.hpp"

namespace ksmooth {

/// Seeded generator. Values are derived from raw mt19937_64 output rather than
/// std distributions, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool coin() { return (next() & 1U) != 0; }

  /// k / den with k uniform in [-max_num, max_num].
  Rational rational(long max_num, long den) { return Rational(uniform(-max_num, max_num), den); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ksmooth
