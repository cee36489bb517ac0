#pragma once

#include <vector>

#include "jetgeom/em_form.hpp"
#include "jetgeom/lagrangian.hpp"

// Geometry of an arbitrary jet Lagrangian by exact forward-mode differentiation.
//
// Every object is a member template over the scalar type, so a derivative of
// any object is the same code evaluated on Dual<T>. The deepest chain
// (curvature → δL/δx → N → G → ∂²L) evaluates L on four nested dual levels.

namespace jetgeom {

template <typename T>
T deriv_part(const Dual<T>& a) {
  return a.d;
}

template <typename T, int R, int C>
Eigen::Matrix<T, R, C> deriv_part(const Eigen::Matrix<Dual<T>, R, C>& m) {
  return m.unaryExpr([](const Dual<T>& a) { return a.d; });
}

template <typename T>
Rank3<T> deriv_part(const Rank3<Dual<T>>& r) {
  return r.map([](const Dual<T>& a) { return a.d; });
}

/// ∂f/∂v at s, for any f built from the scalar type of its argument.
template <typename F, typename T>
auto partial(const F& f, const JetState<T>& s, Var v) {
  return deriv_part(f(seed(s, v)));
}

template <typename T>
Mat<T> invert_metric(const Mat<T>& g) {
  try {
    return invert_pivoted<T>(g);
  } catch (const SingularMatrix& e) {
    throw NonInvertibleMetric(std::string("fundamental tensor is singular: ") + e.what());
  }
}

template <typename T>
struct SemisprayT {
  Vec<T> H;  // H^(i)_(1)1
  Vec<T> G;  // G^(i)_(1)1
};

template <typename T>
struct CartanT {
  Mat<T> g;
  Mat<T> ginv;
  Mat<T> N;
  Mat<T> Gk;    // G^k_j1, stored (k, j)
  Rank3<T> L;   // L^i_jk
  Rank3<T> C;   // C^i(1)_j(k), stored (i, j, k)
};

template <JetLagrangian Lag>
class JetGeometry {
 public:
  JetGeometry(Lag lagrangian, TemporalMetric h) : lag_(std::move(lagrangian)), h_(h) {}

  Index dim() const { return lag_.dimension(); }
  const Lag& lagrangian() const { return lag_; }
  const TemporalMetric& temporal() const { return h_; }

  template <typename T>
  T d1(const JetState<T>& s, Var v) const {
    return lag_(seed(s, v)).d;
  }

  template <typename T>
  T d2(const JetState<T>& s, Var v, Var w) const {
    return lag_(seed(seed(s, v), w)).d.d;
  }

  /// g_ij = (h₁₁/2) ∂²L/∂yⁱ∂yʲ.
  template <typename T>
  Mat<T> metric(const JetState<T>& s) const {
    const Index n = dim();
    const T half_h = h_.h11(s.t) / 2.0;
    Mat<T> g(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i; j < n; ++j) {
        g(i, j) = half_h * d2(s, {Slot::y, i}, {Slot::y, j});
        g(j, i) = g(i, j);
      }
    }
    return g;
  }

  /// H = −½ϰy and G = (h₁₁gⁱᵏ/4)[∂²L/∂xᵐ∂yᵏ yᵐ − ∂L/∂xᵏ + ∂²L/∂t∂yᵏ + ϰ ∂L/∂yᵏ + 2h¹¹ϰ g_km yᵐ].
  template <typename T>
  SemisprayT<T> semispray(const JetState<T>& s) const {
    const Index n = dim();
    const T h11 = h_.h11(s.t);
    const T hinv = 1.0 / h11;
    const T kappa = h_.kappa(s.t);
    const Mat<T> g = metric(s);
    const Mat<T> ginv = invert_metric(g);

    Vec<T> bracket(n);
    for (Index k = 0; k < n; ++k) {
      const Var yk{Slot::y, k};
      T b = d2(s, Var{Slot::t, 0}, yk) - d1(s, {Slot::x, k}) + d1(s, yk) * kappa;
      T gy(0.0);
      for (Index m = 0; m < n; ++m) {
        b = b + d2(s, {Slot::x, m}, yk) * s.y(m);
        gy = gy + g(k, m) * s.y(m);
      }
      bracket(k) = b + 2.0 * hinv * kappa * gy;
    }
    SemisprayT<T> out;
    out.G = (ginv * bracket) * (h11 / 4.0);
    out.H = s.y * (-0.5 * kappa);
    return out;
  }

  /// N^(i)_(1)j = ∂G^(i)/∂yʲ.
  template <typename T>
  Mat<T> nonlinear(const JetState<T>& s) const {
    const Index n = dim();
    Mat<T> N(n, n);
    for (Index j = 0; j < n; ++j) {
      const auto sp = semispray(seed(s, {Slot::y, j}));
      for (Index i = 0; i < n; ++i) N(i, j) = sp.G(i).d;
    }
    return N;
  }

  /// Cartan canonical connection through the adapted derivatives
  /// δ/δt = ∂/∂t + ϰyᵖ∂/∂yᵖ and δ/δxᵏ = ∂/∂xᵏ − Nᵖ_k ∂/∂yᵖ.
  template <typename T>
  CartanT<T> cartan(const JetState<T>& s) const {
    const Index n = dim();
    const auto metric_fn = [this](const auto& st) { return this->metric(st); };
    CartanT<T> c;
    c.g = metric(s);
    c.ginv = invert_metric(c.g);
    c.N = nonlinear(s);
    const T kappa = h_.kappa(s.t);

    std::vector<Mat<T>> dgy(static_cast<std::size_t>(n));
    for (Index p = 0; p < n; ++p) dgy[p] = partial(metric_fn, s, {Slot::y, p});
    std::vector<Mat<T>> dgx(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
      dgx[k] = partial(metric_fn, s, {Slot::x, k});
      for (Index p = 0; p < n; ++p) dgx[k] -= c.N(p, k) * dgy[p];
    }
    Mat<T> dgt = partial(metric_fn, s, Var{Slot::t, 0});
    for (Index p = 0; p < n; ++p) dgt += (kappa * s.y(p)) * dgy[p];

    c.Gk = (c.ginv * dgt) * T(0.5);
    c.L = Rank3<T>(n);
    c.C = Rank3<T>(n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
          T l(0.0), cc(0.0);
          for (Index m = 0; m < n; ++m) {
            l = l + c.ginv(i, m) * (dgx[k](j, m) + dgx[j](k, m) - dgx[m](j, k));
            cc = cc + c.ginv(i, m) * (dgy[k](j, m) + dgy[j](k, m) - dgy[m](j, k));
          }
          c.L(i, j, k) = 0.5 * l;
          c.C(i, j, k) = 0.5 * cc;
        }
      }
    }
    return c;
  }

  /// R^(l)_(1)jk = δN^(l)_(1)j/δxᵏ − δN^(l)_(1)k/δxʲ.
  template <typename T>
  Rank3<T> torsion(const JetState<T>& s) const {
    const Index n = dim();
    const auto nonlinear_fn = [this](const auto& st) { return this->nonlinear(st); };
    const Mat<T> N = nonlinear(s);
    std::vector<Mat<T>> dNy(static_cast<std::size_t>(n));
    for (Index p = 0; p < n; ++p) dNy[p] = partial(nonlinear_fn, s, {Slot::y, p});
    std::vector<Mat<T>> dN(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
      dN[k] = partial(nonlinear_fn, s, {Slot::x, k});
      for (Index p = 0; p < n; ++p) dN[k] -= N(p, k) * dNy[p];
    }
    Rank3<T> R(n);
    for (Index l = 0; l < n; ++l)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) R(l, j, k) = dN[k](l, j) - dN[j](l, k);
    return R;
  }

  /// R^l_ijk = δL^l_ij/δxᵏ − δL^l_ik/δxʲ + L^r_ij L^l_rk − L^r_ik L^l_rj + C^l_ir R^(r)_(1)jk.
  template <typename T>
  Rank4<T> curvature(const JetState<T>& s) const {
    const Index n = dim();
    const auto cartan_fn = [this](const auto& st) { return this->cartan(st).L; };
    const CartanT<T> c = cartan(s);
    const Rank3<T> tors = torsion(s);
    std::vector<Rank3<T>> dLy(static_cast<std::size_t>(n));
    for (Index p = 0; p < n; ++p) dLy[p] = partial(cartan_fn, s, {Slot::y, p});
    std::vector<Rank3<T>> dL(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
      dL[k] = partial(cartan_fn, s, {Slot::x, k});
      for (Index p = 0; p < n; ++p) dL[k] = dL[k] - c.N(p, k) * dLy[p];
    }
    Rank4<T> R(n);
    for (Index l = 0; l < n; ++l) {
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          for (Index k = 0; k < n; ++k) {
            T v = dL[k](l, i, j) - dL[j](l, i, k);
            for (Index r = 0; r < n; ++r) {
              // Grouped so that swapping j and k negates every term exactly.
              v = v + ((c.L(r, i, j) * c.L(l, r, k) - c.L(r, i, k) * c.L(l, r, j)) +
                       c.C(l, i, r) * tors(r, j, k));
            }
            R(l, i, j, k) = v;
          }
        }
      }
    }
    return R;
  }

  template <typename T>
  Mat<T> em_2form(const JetState<T>& s) const {
    const CartanT<T> c = cartan(s);
    const T hinv = 1.0 / h_.h11(s.t);
    return em_two_form(hinv, c.g, c.N, c.L, s.y);
  }

  void check_domain(const JetPoint& p) const {
    if (p.x.size() != dim() || p.y.size() != dim()) {
      throw DomainError("jet point dimension does not match the Lagrangian");
    }
    if (!lag_.in_domain(p)) {
      throw DomainError("point outside the Lagrangian domain (t = " + std::to_string(p.t) + ")");
    }
  }

 private:
  Lag lag_;
  TemporalMetric h_;
};

// Operation-level entry points over plain doubles.

struct Semispray {
  Eigen::VectorXd H;
  Eigen::VectorXd G;
};

struct AdaptedFrame {
  Eigen::MatrixXd N;  // N^(i)_(1)j
  Eigen::VectorXd M;  // M^(i)_(1)1 = 2H
  double kappa = 0.0;
};

struct CartanComponents {
  Eigen::MatrixXd Gk_j1;
  Rank3<double> L3;
  Rank3<double> C;
};

struct CurvatureSuite {
  Rank4<double> R4;
  Eigen::MatrixXd ricci;  // R_ij = R^m_ijm; symmetry is the caller's check
  double scalarR = 0.0;
};

template <JetLagrangian Lag>
SymMatrix metric_from_lagrangian(const Lag& lag, const JetPoint& p, const TemporalMetric& h) {
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(p);
  return SymMatrix(geo.metric(to_state(p)));
}

template <JetLagrangian Lag>
Semispray semispray(const Lag& lag, const JetPoint& p, const TemporalMetric& h) {
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(p);
  auto sp = geo.semispray(to_state(p));
  return {sp.H, sp.G};
}

template <JetLagrangian Lag>
AdaptedFrame nonlinear_from_semispray(const Lag& lag, const JetPoint& p, const TemporalMetric& h) {
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(p);
  const auto s = to_state(p);
  AdaptedFrame f;
  f.N = geo.nonlinear(s);
  f.M = 2.0 * geo.semispray(s).H;
  f.kappa = h.kappa(p.t);
  return f;
}

template <JetLagrangian Lag>
CartanComponents cartan_from_metric(const Lag& lag, const JetPoint& p, const TemporalMetric& h) {
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(p);
  auto c = geo.cartan(to_state(p));
  return {c.Gk, c.L, c.C};
}

template <JetLagrangian Lag>
Rank3<double> torsion_generic(const Lag& lag, const JetPoint& p, const TemporalMetric& h) {
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(p);
  return geo.torsion(to_state(p));
}

template <JetLagrangian Lag>
CurvatureSuite curvature_suite(const Lag& lag, const JetPoint& p, const TemporalMetric& h) {
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(p);
  const auto s = to_state(p);
  CurvatureSuite out;
  out.R4 = geo.curvature(s);
  out.ricci = contract_trace(out.R4);
  const Eigen::MatrixXd ginv = invert_metric(geo.metric(s));
  out.scalarR = (ginv.array() * out.ricci.array()).sum();
  return out;
}

template <JetLagrangian Lag>
Eigen::MatrixXd em_2form(const Lag& lag, const JetPoint& p, const TemporalMetric& h) {
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(p);
  return geo.em_2form(to_state(p));
}

}  // namespace jetgeom
