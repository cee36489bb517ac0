#include "jetgeom/temporal_metric.hpp"

namespace jetgeom {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::constant: return "constant";
    case MetricKind::power: return "power";
    case MetricKind::exponential: return "exponential";
  }
  return "unknown";
}

TemporalMetric TemporalMetric::constant(double h0) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) throw DomainError("constant h11 must be positive");
  return TemporalMetric(MetricKind::constant, h0);
}

TemporalMetric TemporalMetric::power(double k) {
  if (!std::isfinite(k)) throw DomainError("power exponent must be finite");
  return TemporalMetric(MetricKind::power, k);
}

TemporalMetric TemporalMetric::exponential(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("exponential rate must be finite");
  return TemporalMetric(MetricKind::exponential, lambda);
}

TemporalEval TemporalMetric::evaluate(double t) const {
  if (!std::isfinite(t)) throw DomainError("non-finite t");
  if (!in_domain(t)) throw DomainError("t = " + std::to_string(t) + " outside the domain t > 0");
  double h = param_;
  double dh = 0.0;
  switch (kind_) {
    case MetricKind::constant:
      break;
    case MetricKind::power:
      h = std::pow(t, param_);
      dh = param_ * std::pow(t, param_ - 1.0);
      break;
    case MetricKind::exponential:
      h = std::exp(param_ * t);
      dh = param_ * h;
      break;
  }
  if (!(h > 0.0)) throw DomainError("h11(t) is not positive");
  TemporalEval r;
  r.h11 = h;
  r.h11_inv = 1.0 / h;
  r.kappa = 0.5 * r.h11_inv * dh;
  return r;
}

}  // namespace jetgeom
