#pragma once

#include <cmath>
#include <string>

#include "jetgeom/dual.hpp"
#include "jetgeom/errors.hpp"

namespace jetgeom {

enum class MetricKind { constant, power, exponential };

std::string to_string(MetricKind kind);

struct TemporalEval {
  double h11 = 1.0;
  double h11_inv = 1.0;
  double kappa = 0.0;  // ϰ¹₁₁ = (h¹¹/2)·dh₁₁/dt
};

/// Riemannian metric h₁₁(t) on the time axis.
class TemporalMetric {
 public:
  TemporalMetric() = default;

  static TemporalMetric constant(double h0);
  /// h₁₁ = tᵏ on t > 0.
  static TemporalMetric power(double k);
  /// h₁₁ = e^{λt}.
  static TemporalMetric exponential(double lambda);

  MetricKind kind() const { return kind_; }
  double param() const { return param_; }

  bool in_domain(double t) const { return kind_ != MetricKind::power || t > 0.0; }

  template <typename T>
  T h11(const T& t) const {
    using std::exp;
    using std::pow;
    switch (kind_) {
      case MetricKind::power: return pow(t, param_);
      case MetricKind::exponential: return exp(param_ * t);
      case MetricKind::constant: break;
    }
    return T(param_);
  }

  /// ϰ¹₁₁ for any scalar type, via one extra dual seed on t.
  template <typename T>
  T kappa(const T& t) const {
    const Dual<T> h = h11(Dual<T>{t, T(1.0)});
    return h.d / (2.0 * h.v);
  }

  /// h₁₁, h¹¹ and ϰ¹₁₁ from the analytic derivative. Throws DomainError.
  TemporalEval evaluate(double t) const;

 private:
  TemporalMetric(MetricKind kind, double param) : kind_(kind), param_(param) {}

  MetricKind kind_ = MetricKind::constant;
  double param_ = 1.0;
};

inline TemporalEval eval_h(const TemporalMetric& metric, double t) { return metric.evaluate(t); }

}  // namespace jetgeom
