#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace macrorep {

// Seeded generator with a portable draw sequence: std::mt19937_64 (whose
// output is fixed by the standard) and a hand-rolled 53-bit mantissa
// conversion, avoiding the implementation-defined std distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Index drawn with probability proportional to weights[i] (>= 0).
  std::size_t discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = uniform() * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      cum += weights[i];
      last_positive = i;
      if (target < cum) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace macrorep
