#pragma once

namespace jetgeom {

/// Numerical thresholds shared by every module and by the acceptance suite.
struct Tolerances {
  double det = 1e-12;       // relative pivot floor for symmetric inversion
  double sym = 1e-10;       // accepted asymmetry when building a SymMatrix
  double xval = 1e-6;       // closed form vs generic engine, relative
  double zero_abs = 1e-9;   // absolute bound for quantities that are exactly zero
  double domain = 1e-12;    // G11(y) must exceed this
};

inline constexpr Tolerances kTolerances{};

}  // namespace jetgeom
