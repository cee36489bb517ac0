#pragma once

#include <cstdint>
#include <random>

#include "jetgeom/jet_point.hpp"
#include "jetgeom/tensor.hpp"

namespace jetgeom {

/// Seeded jet points with t ∈ [0.5, 2], x ∈ [−1, 1]ⁿ and y ∈ [0.1, 2]ⁿ.
/// The positive-orthant y keeps every JCM sample inside G₁₁ > 0.
class JetSampler {
 public:
  explicit JetSampler(std::uint64_t seed) : rng_(seed) {}

  JetPoint next(Index n = 4) {
    JetPoint p;
    p.t = uniform(0.5, 2.0);
    p.x.resize(n);
    p.y.resize(n);
    for (Index i = 0; i < n; ++i) p.x(i) = uniform(-1.0, 1.0);
    for (Index i = 0; i < n; ++i) p.y(i) = uniform(0.1, 2.0);
    return p;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace jetgeom
