#pragma once

#include <string>
#include <vector>

#include "jetgeom/jcm.hpp"

// Gravitational field layer of the JCM geometry. The adapted metric
//   𝔾 = h₁₁ dt⊗dt + g_ij dxⁱ⊗dxʲ + h¹¹g_ij δyⁱ⊗δyʲ
// is block diagonal in the adapted frame; Einstein equations are written per block.

namespace jetgeom {

struct NamedBlock {
  std::string name;
  Eigen::MatrixXd value;
};

struct MetricEnsemble {
  double h11 = 1.0;
  Eigen::MatrixXd g;           // g_ij
  Eigen::MatrixXd g_vertical;  // h¹¹ g_ij
  Eigen::MatrixXd N;           // δyⁱ = dyⁱ − ϰyⁱdt + Nⁱ_p dxᵖ
};

MetricEnsemble assemble_G(const JetPoint& p, const ScalarField& sigma, const TemporalMetric& h);

/// Left-hand sides of the local Einstein equations (they equal 𝒦𝒯 blockwise).
struct EinsteinBlocks {
  Eigen::MatrixXd G_ij;      // R_ij − (R/2) g_ij
  double block_tt = 0.0;     // −R h₁₁ / 2
  Eigen::MatrixXd block_yy;  // −R h¹¹ g_ij / 2
  std::vector<NamedBlock> zero_blocks;
  double compatibility = 0.0;  // max |block_yy·h₁₁ − g·block_tt·h¹¹|
};

EinsteinBlocks einstein_blocks(const Eigen::VectorXd& x, double t, const ScalarField& sigma,
                               const TemporalMetric& h);

struct StressEnergy {
  double K = 1.0;
  double T11_up = 0.0;        // 𝒯¹₁ = −R/2𝒦
  Eigen::MatrixXd T_lower;    // 𝒯_ij = G_ij/𝒦
  Eigen::MatrixXd T_mixed;    // 𝒯ᵐ_i (row m, column i)
  Eigen::MatrixXd Tyy_mixed;  // 𝒯^(m)(1)_(1)(i) = −(R/2𝒦) δᵐ_i
  std::vector<NamedBlock> zero_components;
};

/// Throws InvalidConstant when K = 0.
StressEnergy stress_energy(const Eigen::VectorXd& x, double t, const ScalarField& sigma,
                           const TemporalMetric& h, double K = 1.0);

struct ConservationResiduals {
  double r_time = 0.0;
  Eigen::VectorXd r_space;     // stencil-vs-chain-rule difference of 𝒯ᵐ_{i|m}
  Eigen::VectorXd r_fiber;
  Eigen::VectorXd divergence;  // 𝒯ᵐ_{i|m} itself (diagnostic, not asserted)
};

struct ConservationSteps {
  double stress_stencil = 1e-4;  // five-point differences of 𝒯ᵐ_i over x
  double hessian_stencil = 5e-5; // central differences of σ_ij for σ_ijk
};

ConservationResiduals conservation_residuals(const JetPoint& p, const ScalarField& sigma,
                                             const TemporalMetric& h, double K = 1.0,
                                             ConservationSteps steps = {});

/// F_(i)j from the closed-form g, N and L; vanishes for every σ.
Eigen::MatrixXd em_2form_jcm(const JetPoint& p, const ScalarField& sigma, const TemporalMetric& h);

}  // namespace jetgeom
