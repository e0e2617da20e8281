#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace zsmap {

/// Seedable, portable pseudo-random generator: mt19937_64 with fixed value
/// mappings so other-language reimplementations can reproduce the stream.
/// uniform() maps the top 53 bits to [0,1); normal() is Box-Muller with a
/// cached spare. std::*_distribution is avoided on purpose since its output
/// is implementation defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform integer in [0, n).
  uint64_t index(uint64_t n) {
    return static_cast<uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace zsmap
