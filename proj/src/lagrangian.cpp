#include "jetgeom/lagrangian.hpp"

namespace jetgeom {

ElectrodynamicsLagrangian::ElectrodynamicsLagrangian(ElectrodynamicsParams params,
                                                     TemporalMetric h)
    : params_(std::move(params)), h_(h) {
  const Index n = params_.phi.rows();
  if (n < 1 || params_.phi.cols() != n) throw MalformedField("phi must be square");
  if (params_.phi != params_.phi.transpose()) throw MalformedField("phi must be symmetric");
  if (static_cast<Index>(params_.potential.size()) != n) {
    throw MalformedField("potential needs one component per base dimension");
  }
  for (const auto& a : params_.potential) {
    if (a.dim() != n) throw MalformedField("potential component has the wrong dimension");
  }
  if (params_.potential_drift.size() != 0 && params_.potential_drift.size() != n) {
    throw MalformedField("potential drift has the wrong length");
  }
  if (params_.potential_function.dim() != n) {
    if (!params_.potential_function.terms().empty()) {
      throw MalformedField("potential function has the wrong dimension");
    }
    params_.potential_function = ScalarField::constant(0.0, n);
  }
  if (params_.mc == 0.0) throw MalformedField("mc must be non-zero");
}

}  // namespace jetgeom
