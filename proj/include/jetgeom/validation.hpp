#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetgeom/jcm.hpp"

// Cross-check of the JCM closed forms against the generic Lagrangian engine
// on randomly sampled jet points.

namespace jetgeom {

struct ObjectDiscrepancy {
  std::string name;
  bool expected_zero = false;  // compared absolutely: both sides must vanish
  double max_abs = 0.0;        // max |closed − generic| over all points
  double max_rel = 0.0;        // max |closed − generic| / max|closed| over points with nonzero closed value
  double max_abs_at_zero = 0.0;  // max |closed − generic| over points where the closed value vanishes
  double max_magnitude = 0.0;  // max |generic|; meaningful for expected-zero objects

  bool passed(double rel_tol, double zero_abs = kTolerances.zero_abs) const;
};

struct PointFailure {
  std::size_t index = 0;
  JetPoint point;
  std::string message;
};

struct ValidationReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ObjectDiscrepancy> objects;
  std::vector<PointFailure> errors;

  bool passed(double rel_tol, double zero_abs = kTolerances.zero_abs) const;
  const ObjectDiscrepancy& object(const std::string& name) const;
};

/// Compares g, gⁱʲ, M, N, L, torsion, curvature, Ricci, R and F at `samples`
/// points drawn by JetSampler(seed). G^k_j1 and C are checked to vanish.
/// Points are evaluated on `threads` workers (0 picks the hardware count);
/// the report does not depend on the thread count.
ValidationReport cross_validate(const ScalarField& sigma, const TemporalMetric& h,
                                std::size_t samples, std::uint64_t seed, unsigned threads = 0);

}  // namespace jetgeom
