#pragma once

#include <random>

#include "roofkit/geometry.hpp"

namespace roofkit {

// Deterministic random stream: a fixed engine plus explicit draw formulas so
// sampled graphs are byte-identical across platforms and stdlib versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {  // [0, 1) with 53 random bits
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p = 0.5) { return uniform01() < p; }

  // Inverse-CDF draw; trailing probability mass (rounding slack) goes to the
  // last bucket.
  int discrete(const std::vector<double>& probabilities) {
    const double u = uniform01();
    double cum = 0.0;
    for (std::size_t k = 0; k + 1 < probabilities.size(); ++k) {
      cum += probabilities[k];
      if (u < cum) return static_cast<int>(k);
    }
    return static_cast<int>(probabilities.size()) - 1;
  }

 private:
  std::mt19937_64 engine_;
};

// Stream splitting for per-sample substreams (splitmix64 of seed + index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class OverlapPolicy {
  RequireOverlap,  // each new box must overlap a previously placed one
  Free,
};

struct SamplerConfig {
  // Probability of 2, 3, 4, 5 primitives; the dataset statistics.
  std::vector<double> count_distribution = {0.30, 0.51, 0.14, 0.05};
  double angle_min = deg_to_rad(15.0);
  double angle_max = deg_to_rad(45.0);
  int min_box_side = 6;   // pixels
  OverlapPolicy overlap_policy = OverlapPolicy::RequireOverlap;
  int resolution = 32;
  double meters_per_pixel = 0.5;
  double snap_probability = 0.5;  // boundary and angle snapping during placement
};

// Number of primitives, drawn from config.count_distribution over {2,3,4,5}.
int sample_count(Rng& rng, const SamplerConfig& config = {});

// Procedural relation-consistent graph: integer boxes, boundary/angle
// snapping, relations re-detected at tolerance zero after ground-truth
// snapping, and hip primitives kept away from the gable-degenerate regime.
// Throws with seed context if placement keeps failing.
RoofGraph sample_graph(Rng& rng, const SamplerConfig& config = {});

}  // namespace roofkit
