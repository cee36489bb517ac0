#pragma once

#include <Eigen/Core>

#include "jetgeom/jet_point.hpp"
#include "jetgeom/scalar_field.hpp"
#include "jetgeom/temporal_metric.hpp"
#include "jetgeom/tensor.hpp"

// Closed-form geometry of the jet conformal Minkowski (JCM) metric
//   F(t, x, y) = e^{σ(x)} √h¹¹(t) √G₁₁(y),   G₁₁ = Σ_{i<j} yⁱ yʲ   on J¹(ℝ, M⁴).
// Index storage is 0-based; N(i, j) = N^(i)_(1)j, L(i, j, k) = L^i_jk,
// frakR(l, i, j, k) = 𝔕R^l_ijk, torsion(l, j, k) = R^(l)_(1)jk.

namespace jetgeom {

inline constexpr Index kJcmDim = 4;

/// G₁₁ = Σ_{i<j} yⁱyʲ for any scalar type.
template <typename T>
T jcm_quadratic(const Vec<T>& y) {
  T s(0.0);
  for (Index i = 0; i < y.size(); ++i)
    for (Index j = i + 1; j < y.size(); ++j) s = s + y(i) * y(j);
  return s;
}

struct QuadraticFormEval {
  double G11 = 0.0;
  double S = 0.0;            // S_[1]1 = Σ yⁱ
  Eigen::VectorXd G_i1;      // S − yⁱ
  Eigen::MatrixXd G_ij;      // 1 − δ_ij
};

QuadraticFormEval quad_form(const Eigen::VectorXd& y);

/// Rejects points with G₁₁(y) ≤ domain_eps.
void check_jcm_domain(const Eigen::VectorXd& y, double domain_eps = kTolerances.domain);

double jcm_F(const JetPoint& p, const ScalarField& sigma, const TemporalMetric& h);

struct MetricPair {
  SymMatrix g;
  SymMatrix ginv;
};

/// g_ij = (e^{2σ}/2)(1 − δ_ij) and its closed-form inverse (2e^{−2σ}/3)(1 − 3δʲᵏ).
MetricPair fundamental_metric(const Eigen::VectorXd& x, const ScalarField& sigma);

struct NonlinearConnection {
  Eigen::VectorXd M;  // M^(i)_(1)1
  Eigen::MatrixXd N;  // N^(i)_(1)j
};

NonlinearConnection nonlinear_connection(const JetPoint& p, const ScalarField& sigma,
                                         const TemporalMetric& h);

/// h-components L^i_jk of the Cartan connection; G^k_j1 and C vanish identically.
Rank3<double> cartan_L(const Eigen::VectorXd& x, const ScalarField& sigma);

Rank4<double> curvature_frak(const Eigen::VectorXd& x, const ScalarField& sigma);

/// R^(l)_(1)jk = 𝔕R^l_pjk yᵖ.
Rank3<double> torsion(const JetPoint& p, const ScalarField& sigma);

SymMatrix ricci(const Eigen::VectorXd& x, const ScalarField& sigma);

double scalar_curvature(const Eigen::VectorXd& x, const ScalarField& sigma);

struct MinkowskiTransform {
  Eigen::Matrix4d A;
  Eigen::Vector4d signature;  // (1, −1, −1, −1)
  Eigen::Matrix4d product;    // Aᵀ Q A with Q_ij = ½(1 − δ_ij)
  double deviation = 0.0;     // max |Aᵀ Q A − diag(signature)|
};

/// Constant congruence taking G₁₁ to (ỹ¹)² − (ỹ²)² − (ỹ³)² − (ỹ⁴)².
/// Throws SignatureMismatch if the product misses the diagonal form by more than 1e−12.
MinkowskiTransform minkowski_transform();

struct GeometryBundle {
  SymMatrix g;
  SymMatrix ginv;
  Eigen::VectorXd M;
  Eigen::MatrixXd N;
  Rank3<double> L;
  Rank4<double> frakR;
  Rank3<double> torsion;
  SymMatrix ricci;
  double scalarR = 0.0;
};

GeometryBundle geometry_bundle(const JetPoint& p, const ScalarField& sigma,
                               const TemporalMetric& h);

}  // namespace jetgeom
