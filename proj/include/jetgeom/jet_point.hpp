#pragma once

#include <Eigen/Core>

namespace jetgeom {

/// A point (t; x¹..xⁿ; y¹₁..yⁿ₁) of the 1-jet space J¹(ℝ, Mⁿ).
struct JetPoint {
  double t = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

}  // namespace jetgeom
