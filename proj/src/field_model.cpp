#include "jetgeom/field_model.hpp"

#include <cmath>

#include "jetgeom/em_form.hpp"

namespace jetgeom {

namespace {

void require_K(double K) {
  if (K == 0.0 || !std::isfinite(K)) throw InvalidConstant("Einstein constant K must be non-zero");
}

Eigen::MatrixXd zeros(Index r, Index c) { return Eigen::MatrixXd::Zero(r, c); }

// ∇_m Eᵐ_i = ∂_m Eᵐ_i + Eʳ_i L^m_rm − Eᵐ_r L^r_im, given ∂_m Eᵐ_i per m.
Eigen::VectorXd covariant_divergence(const Eigen::MatrixXd& E,
                                     const std::vector<Eigen::MatrixXd>& dE,
                                     const Rank3<double>& L) {
  const Index n = E.rows();
  Eigen::VectorXd div = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < n; ++i) {
    for (Index m = 0; m < n; ++m) {
      div(i) += dE[static_cast<std::size_t>(m)](m, i);
      for (Index r = 0; r < n; ++r) div(i) += E(r, i) * L(m, r, m) - E(m, r) * L(r, i, m);
    }
  }
  return div;
}

}  // namespace

MetricEnsemble assemble_G(const JetPoint& p, const ScalarField& sigma, const TemporalMetric& h) {
  check_jcm_domain(p.y);
  const TemporalEval he = h.evaluate(p.t);
  MetricEnsemble e;
  e.h11 = he.h11;
  e.g = fundamental_metric(p.x, sigma).g.matrix();
  e.g_vertical = he.h11_inv * e.g;
  e.N = nonlinear_connection(p, sigma, h).N;
  return e;
}

EinsteinBlocks einstein_blocks(const Eigen::VectorXd& x, double t, const ScalarField& sigma,
                               const TemporalMetric& h) {
  const TemporalEval he = h.evaluate(t);
  const Eigen::MatrixXd g = fundamental_metric(x, sigma).g.matrix();
  const Eigen::MatrixXd ric = ricci(x, sigma).matrix();
  const double R = scalar_curvature(x, sigma);
  const Index n = g.rows();

  EinsteinBlocks b;
  b.G_ij = ric - 0.5 * R * g;
  b.block_tt = -0.5 * R * he.h11;
  b.block_yy = -0.5 * R * he.h11_inv * g;
  // 𝔾 has no mixed blocks and the mixed Ricci components of this connection vanish.
  b.zero_blocks = {{"T_1i", zeros(1, n)},        {"T_i1", zeros(n, 1)},
                   {"T^(1)_(i)1", zeros(n, 1)},  {"T_1(i)^(1)", zeros(1, n)},
                   {"T_i(j)^(1)", zeros(n, n)},  {"T^(1)_(i)j", zeros(n, n)}};
  b.compatibility = (b.block_yy * he.h11 - g * b.block_tt * he.h11_inv).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, b.block_yy.cwiseAbs().maxCoeff() * he.h11);
  if (b.compatibility > 1e-12 * scale) {
    throw GeometryError("Einstein block compatibility violated by " +
                        std::to_string(b.compatibility));
  }
  return b;
}

StressEnergy stress_energy(const Eigen::VectorXd& x, double t, const ScalarField& sigma,
                           const TemporalMetric& h, double K) {
  require_K(K);
  h.evaluate(t);
  const MetricPair gp = fundamental_metric(x, sigma);
  const Eigen::MatrixXd ric = ricci(x, sigma).matrix();
  const double R = scalar_curvature(x, sigma);
  const Index n = ric.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

  StressEnergy s;
  s.K = K;
  s.T11_up = -R / (2.0 * K);
  s.T_lower = (ric - 0.5 * R * gp.g.matrix()) / K;
  s.T_mixed = (gp.ginv.matrix() * ric - 0.5 * R * I) / K;
  s.Tyy_mixed = (-R / (2.0 * K)) * I;
  s.zero_components = {{"T^m_1", zeros(n, 1)},          {"T^(m)_(1)1", zeros(n, 1)},
                       {"T^1_i", zeros(1, n)},          {"T^1(1)_(i)", zeros(1, n)},
                       {"T^(m)_(1)i", zeros(n, n)},     {"T^m(1)_(i)", zeros(n, n)}};
  return s;
}

ConservationResiduals conservation_residuals(const JetPoint& p, const ScalarField& sigma,
                                             const TemporalMetric& h, double K,
                                             ConservationSteps steps) {
  require_K(K);
  const TemporalEval he = h.evaluate(p.t);
  const Eigen::VectorXd& x = p.x;
  const Index n = x.size();

  // R as a function on the jet space; it depends on x alone.
  const auto R_at = [&](double, const Eigen::VectorXd& xx, const Eigen::VectorXd&) {
    return scalar_curvature(xx, sigma);
  };

  ConservationResiduals out;
  {
    const double dt = 1e-4 * (1.0 + std::abs(p.t));
    double dR = (R_at(p.t + dt, x, p.y) - R_at(p.t - dt, x, p.y)) / (2.0 * dt);
    out.r_fiber = Eigen::VectorXd::Zero(n);
    for (Index q = 0; q < n; ++q) {
      const double dy = 1e-4 * (1.0 + std::abs(p.y(q)));
      Eigen::VectorXd yp = p.y, ym = p.y;
      yp(q) += dy;
      ym(q) -= dy;
      const double dRy = (R_at(p.t, x, yp) - R_at(p.t, x, ym)) / (2.0 * dy);
      dR += he.kappa * p.y(q) * dRy;
      out.r_fiber(q) = -dRy / (2.0 * K);
    }
    out.r_time = -dR / (2.0 * K);
  }

  const Rank3<double> L = cartan_L(x, sigma);

  // Route 1: five-point central differences of the assembled 𝒯ᵐ_i. The
  // truncation error is O(step⁴), so the residual is set by route 2.
  const Eigen::MatrixXd T = stress_energy(x, p.t, sigma, h, K).T_mixed;
  const auto T_at = [&](Index m, double shift) {
    Eigen::VectorXd xs = x;
    xs(m) += shift;
    return stress_energy(xs, p.t, sigma, h, K).T_mixed;
  };
  std::vector<Eigen::MatrixXd> dT;
  for (Index m = 0; m < n; ++m) {
    const double step = steps.stress_stencil * (1.0 + std::abs(x(m)));
    dT.push_back((-T_at(m, 2 * step) + 8.0 * T_at(m, step) - 8.0 * T_at(m, -step) + T_at(m, -2 * step)) /
                 (12.0 * step));
  }
  const Eigen::VectorXd lhs = covariant_divergence(T, dT, L);

  // Route 2: chain rule on Eᵐ_i = gᵐʳR_ri − (R/2)δᵐ_i with σ_ijk from the Hessian stencil.
  const ScalarFieldEval s = sigma.evaluate(x);
  const Rank3<double> s3 = third_derivatives(sigma, x, steps.hessian_stencil);
  const MetricPair gp = fundamental_metric(x, sigma);
  const Eigen::MatrixXd ginv = gp.ginv.matrix();
  const Eigen::MatrixXd ric = ricci(x, sigma).matrix();
  const double R = scalar_curvature(x, sigma);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd E = ginv * ric - 0.5 * R * I;

  std::vector<Eigen::MatrixXd> dE;
  for (Index m = 0; m < n; ++m) {
    double d_lap = 0.0, d_grad2 = 0.0, d_frakS = 0.0;
    for (Index a = 0; a < n; ++a) {
      d_lap += s3(a, a, m);
      d_grad2 += 2.0 * s.grad(a) * s.hess(a, m);
      for (Index b = 0; b < n; ++b) d_frakS += s3(a, b, m);
    }
    const double d_div = s.div_D_grad(m);
    const double d_ricci_bracket = 3.0 * d_lap + 6.0 * d_grad2 - 4.0 * s.div_D * d_div - d_frakS;
    Eigen::MatrixXd d_ric(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        d_ric(i, j) = -2.0 * (s3(i, j, m) - s.hess(i, m) * s.grad(j) - s.grad(i) * s.hess(j, m)) +
                      (i == j ? 0.0 : d_ricci_bracket / 3.0);
      }
    }
    const double d_R = -2.0 * s.grad(m) * R +
                       4.0 * std::exp(-2.0 * s.value) *
                           (3.0 * d_lap + 3.0 * d_grad2 - 2.0 * s.div_D * d_div - d_frakS);
    const Eigen::MatrixXd d_ginv = -2.0 * s.grad(m) * ginv;
    dE.push_back(d_ginv * ric + ginv * d_ric - 0.5 * d_R * I);
  }
  const Eigen::VectorXd rhs = covariant_divergence(E, dE, L) / K;

  out.r_space = lhs - rhs;
  out.divergence = rhs;
  return out;
}

Eigen::MatrixXd em_2form_jcm(const JetPoint& p, const ScalarField& sigma, const TemporalMetric& h) {
  const GeometryBundle b = geometry_bundle(p, sigma, h);
  const double hinv = h.evaluate(p.t).h11_inv;
  return em_two_form<double>(hinv, b.g.matrix(), b.N, b.L, p.y);
}

}  // namespace jetgeom
