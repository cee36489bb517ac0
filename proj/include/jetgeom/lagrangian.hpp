#pragma once

#include <concepts>
#include <cmath>
#include <vector>

#include "jetgeom/dual.hpp"
#include "jetgeom/jcm.hpp"
#include "jetgeom/jet_point.hpp"
#include "jetgeom/scalar_field.hpp"
#include "jetgeom/temporal_metric.hpp"
#include "jetgeom/tensor.hpp"

namespace jetgeom {

/// (t, x, y) over an arbitrary scalar type; the argument of every Lagrangian.
template <typename T>
struct JetState {
  T t{};
  Vec<T> x;
  Vec<T> y;
};

inline JetState<double> to_state(const JetPoint& p) { return {p.t, p.x, p.y}; }

enum class Slot { t, x, y };

struct Var {
  Slot slot = Slot::t;
  Index index = 0;
};

/// Lifts `s` to dual numbers with a unit seed on variable `v`.
template <typename T>
JetState<Dual<T>> seed(const JetState<T>& s, Var v) {
  JetState<Dual<T>> out;
  out.t = Dual<T>{s.t, T(0.0)};
  out.x.resize(s.x.size());
  out.y.resize(s.y.size());
  for (Index i = 0; i < s.x.size(); ++i) out.x(i) = Dual<T>{s.x(i), T(0.0)};
  for (Index i = 0; i < s.y.size(); ++i) out.y(i) = Dual<T>{s.y(i), T(0.0)};
  switch (v.slot) {
    case Slot::t: out.t.d = T(1.0); break;
    case Slot::x: out.x(v.index).d = T(1.0); break;
    case Slot::y: out.y(v.index).d = T(1.0); break;
  }
  return out;
}

/// A jet Lagrangian L(t, x, y) on J¹(ℝ, Mⁿ) evaluable on nested dual numbers.
template <typename L>
concept JetLagrangian = requires(const L& lag, const JetState<double>& s,
                                 const JetState<Dual<Dual<double>>>& s2, const JetPoint& p) {
  { lag.dimension() } -> std::convertible_to<Index>;
  { lag(s) } -> std::convertible_to<double>;
  { lag(s2) } -> std::same_as<Dual<Dual<double>>>;
  { lag.in_domain(p) } -> std::convertible_to<bool>;
};

/// L = F² = e^{2σ(x)} h¹¹(t) G₁₁(y) for the jet conformal Minkowski metric.
class JcmLagrangian {
 public:
  JcmLagrangian(ScalarField sigma, TemporalMetric h, double domain_eps = kTolerances.domain)
      : sigma_(std::move(sigma)), h_(h), domain_eps_(domain_eps) {}

  Index dimension() const { return kJcmDim; }

  template <typename T>
  T operator()(const JetState<T>& s) const {
    using std::exp;
    return exp(2.0 * sigma_.value(s.x)) * jcm_quadratic(s.y) / h_.h11(s.t);
  }

  bool in_domain(const JetPoint& p) const {
    return h_.in_domain(p.t) && jcm_quadratic<double>(p.y) > domain_eps_;
  }

  const ScalarField& sigma() const { return sigma_; }
  const TemporalMetric& metric() const { return h_; }

 private:
  ScalarField sigma_;
  TemporalMetric h_;
  double domain_eps_;
};

struct ElectrodynamicsParams {
  double mc = 1.0;
  double charge_over_mass = 1.0;       // e/m
  Eigen::MatrixXd phi;                 // φ_ij, constant and symmetric
  std::vector<ScalarField> potential;  // A_(i)(x)
  Eigen::VectorXd potential_drift;     // ∂A_(i)/∂t, constant; empty means zero
  ScalarField potential_function;      // ℱ(x)
};

/// L = mc·h¹¹(t)·φ_ij yⁱyʲ + (2e/m)·A_(i)(t, x)·yⁱ + ℱ(x), with A_(i) = A_(i)(x) + t·∂_tA_(i).
class ElectrodynamicsLagrangian {
 public:
  ElectrodynamicsLagrangian(ElectrodynamicsParams params, TemporalMetric h);

  Index dimension() const { return params_.phi.rows(); }

  template <typename T>
  T operator()(const JetState<T>& s) const {
    const Index n = dimension();
    T kinetic(0.0);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) kinetic = kinetic + params_.phi(i, j) * (s.y(i) * s.y(j));
    T coupling(0.0);
    for (Index i = 0; i < n; ++i) {
      T a = params_.potential[static_cast<std::size_t>(i)].value(s.x);
      if (params_.potential_drift.size() == n) a = a + params_.potential_drift(i) * s.t;
      coupling = coupling + a * s.y(i);
    }
    return params_.mc * kinetic / h_.h11(s.t) + (2.0 * params_.charge_over_mass) * coupling +
           params_.potential_function.value(s.x);
  }

  bool in_domain(const JetPoint& p) const { return h_.in_domain(p.t); }

  const ElectrodynamicsParams& params() const { return params_; }

 private:
  ElectrodynamicsParams params_;
  TemporalMetric h_;
};

static_assert(JetLagrangian<JcmLagrangian>);
static_assert(JetLagrangian<ElectrodynamicsLagrangian>);

}  // namespace jetgeom
