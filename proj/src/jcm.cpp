#include "jetgeom/jcm.hpp"

#include <cmath>

namespace jetgeom {

namespace {

double delta(Index i, Index j) { return i == j ? 1.0 : 0.0; }

void require_dim4(const Eigen::VectorXd& v, const char* what) {
  if (v.size() != kJcmDim) {
    throw DomainError(std::string("JCM closed forms need a 4-vector for ") + what);
  }
}

ScalarFieldEval sigma_at(const Eigen::VectorXd& x, const ScalarField& sigma) {
  require_dim4(x, "x");
  if (sigma.dim() != kJcmDim) throw MalformedField("JCM needs a field on M⁴");
  return sigma.evaluate(x);
}

}  // namespace

QuadraticFormEval quad_form(const Eigen::VectorXd& y) {
  QuadraticFormEval q;
  const Index n = y.size();
  q.G11 = jcm_quadratic<double>(y);
  q.S = y.sum();
  q.G_i1 = Eigen::VectorXd::Constant(n, q.S) - y;
  q.G_ij = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
  return q;
}

void check_jcm_domain(const Eigen::VectorXd& y, double domain_eps) {
  const double G11 = jcm_quadratic<double>(y);
  if (!(G11 > domain_eps)) {
    throw DomainError("G11(y) = " + std::to_string(G11) + " <= 0: point outside the JCM domain");
  }
}

double jcm_F(const JetPoint& p, const ScalarField& sigma, const TemporalMetric& h) {
  require_dim4(p.y, "y");
  check_jcm_domain(p.y);
  const TemporalEval he = h.evaluate(p.t);
  const double s = sigma_at(p.x, sigma).value;
  return std::exp(s) * std::sqrt(he.h11_inv) * std::sqrt(jcm_quadratic<double>(p.y));
}

MetricPair fundamental_metric(const Eigen::VectorXd& x, const ScalarField& sigma) {
  const double s = sigma_at(x, sigma).value;
  const double up = std::exp(2.0 * s) / 2.0;
  const double down = 2.0 * std::exp(-2.0 * s) / 3.0;
  Eigen::MatrixXd g(kJcmDim, kJcmDim), ginv(kJcmDim, kJcmDim);
  for (Index i = 0; i < kJcmDim; ++i) {
    for (Index j = 0; j < kJcmDim; ++j) {
      g(i, j) = up * (1.0 - delta(i, j));
      ginv(i, j) = down * (1.0 - 3.0 * delta(i, j));
    }
  }
  return {SymMatrix(g), SymMatrix(ginv)};
}

NonlinearConnection nonlinear_connection(const JetPoint& p, const ScalarField& sigma,
                                         const TemporalMetric& h) {
  require_dim4(p.y, "y");
  const ScalarFieldEval s = sigma_at(p.x, sigma);
  const double kappa = h.evaluate(p.t).kappa;
  const double S = p.y.sum();
  const double sy = s.grad.dot(p.y);

  NonlinearConnection nc;
  nc.M = -kappa * p.y;
  nc.N.resize(kJcmDim, kJcmDim);
  // Printed with σ_i in the upper slot; kept literal (no metric raising).
  for (Index i = 0; i < kJcmDim; ++i) {
    for (Index j = 0; j < kJcmDim; ++j) {
      nc.N(i, j) = s.grad(j) * p.y(i) + sy * delta(i, j) +
                   (s.grad(i) - s.div_D / 3.0) * (S - p.y(j));
    }
  }
  return nc;
}

Rank3<double> cartan_L(const Eigen::VectorXd& x, const ScalarField& sigma) {
  const ScalarFieldEval s = sigma_at(x, sigma);
  Rank3<double> L(kJcmDim);
  for (Index i = 0; i < kJcmDim; ++i) {
    for (Index j = 0; j < kJcmDim; ++j) {
      for (Index k = 0; k < kJcmDim; ++k) {
        const double off = 1.0 - delta(j, k);
        L(i, j, k) = delta(i, j) * s.grad(k) + delta(i, k) * s.grad(j) + off * s.grad(i) -
                     off / 3.0 * s.div_D;
      }
    }
  }
  return L;
}

Rank4<double> curvature_frak(const Eigen::VectorXd& x, const ScalarField& sigma) {
  const ScalarFieldEval s = sigma_at(x, sigma);
  const Eigen::VectorXd& d = s.grad;
  const Eigen::MatrixXd& dd = s.hess;
  const Eigen::VectorXd& D = s.div_D_grad;
  const double div = s.div_D;
  const double radial = s.grad_norm2 - div * div / 3.0;
  // a(p, q) = σ_pq − σ_p σ_q
  Eigen::MatrixXd a = dd - d * d.transpose();

  Rank4<double> R(kJcmDim);
  for (Index l = 0; l < kJcmDim; ++l) {
    for (Index i = 0; i < kJcmDim; ++i) {
      for (Index j = 0; j < kJcmDim; ++j) {
        for (Index k = j + 1; k < kJcmDim; ++k) {
          const double v =
              delta(j, l) * a(i, k) - delta(k, l) * a(i, j)
              + (1.0 - delta(i, j)) * a(l, k) - (1.0 - delta(i, k)) * a(l, j)
              + div / 3.0 * (d(k) - d(j) + delta(i, k) * d(j) - delta(i, j) * d(k))
              + radial * (delta(k, l) - delta(j, l) + delta(i, k) * delta(j, l) -
                          delta(i, j) * delta(k, l))
              + (D(j) - D(k) + delta(i, j) * D(k) - delta(i, k) * D(j)) / 3.0;
          R(l, i, j, k) = v;
          R(l, i, k, j) = -v;
        }
      }
    }
  }
  return R;
}

Rank3<double> torsion(const JetPoint& p, const ScalarField& sigma) {
  require_dim4(p.y, "y");
  const Rank4<double> R = curvature_frak(p.x, sigma);
  Rank3<double> T(kJcmDim);
  for (Index l = 0; l < kJcmDim; ++l)
    for (Index j = 0; j < kJcmDim; ++j)
      for (Index k = 0; k < kJcmDim; ++k)
        for (Index q = 0; q < kJcmDim; ++q) T(l, j, k) += R(l, q, j, k) * p.y(q);
  return T;
}

SymMatrix ricci(const Eigen::VectorXd& x, const ScalarField& sigma) {
  const ScalarFieldEval s = sigma_at(x, sigma);
  const double bracket =
      3.0 * s.laplacian + 6.0 * s.grad_norm2 - 2.0 * s.div_D * s.div_D - s.frakS;
  Eigen::MatrixXd r(kJcmDim, kJcmDim);
  for (Index i = 0; i < kJcmDim; ++i)
    for (Index j = 0; j < kJcmDim; ++j)
      r(i, j) = -2.0 * (s.hess(i, j) - s.grad(i) * s.grad(j)) +
                (1.0 - delta(i, j)) / 3.0 * bracket;
  return SymMatrix(r);
}

double scalar_curvature(const Eigen::VectorXd& x, const ScalarField& sigma) {
  const ScalarFieldEval s = sigma_at(x, sigma);
  return 4.0 * std::exp(-2.0 * s.value) *
         (3.0 * s.laplacian + 3.0 * s.grad_norm2 - s.div_D * s.div_D - s.frakS);
}

MinkowskiTransform minkowski_transform() {
  const double r6 = 1.0 / std::sqrt(6.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  MinkowskiTransform m;
  m.A << r6, -r3, 1.0, -r6,
         r6, 2.0 * r3, 0.0, -r6,
         r6, 0.0, 0.0, 3.0 * r6,
         r6, -r3, -1.0, -r6;
  m.signature << 1.0, -1.0, -1.0, -1.0;
  const Eigen::Matrix4d Q = 0.5 * (Eigen::Matrix4d::Ones() - Eigen::Matrix4d::Identity());
  m.product = m.A.transpose() * Q * m.A;
  m.deviation = (m.product - Eigen::Matrix4d(m.signature.asDiagonal())).cwiseAbs().maxCoeff();
  if (m.deviation > 1e-12) {
    throw SignatureMismatch("A^T Q A deviates from diag(1,-1,-1,-1) by " +
                            std::to_string(m.deviation));
  }
  return m;
}

GeometryBundle geometry_bundle(const JetPoint& p, const ScalarField& sigma,
                               const TemporalMetric& h) {
  check_jcm_domain(p.y);
  MetricPair gp = fundamental_metric(p.x, sigma);
  NonlinearConnection nc = nonlinear_connection(p, sigma, h);
  GeometryBundle b{gp.g,
                   gp.ginv,
                   nc.M,
                   nc.N,
                   cartan_L(p.x, sigma),
                   curvature_frak(p.x, sigma),
                   torsion(p, sigma),
                   ricci(p.x, sigma),
                   scalar_curvature(p.x, sigma)};
  return b;
}

}  // namespace jetgeom
