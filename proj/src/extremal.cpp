#include "jetgeom/extremal.hpp"

namespace jetgeom {

double velocity_mismatch(const Trajectory& traj) {
  const auto& s = traj.samples;
  if (s.size() < 5) throw std::invalid_argument("velocity_mismatch needs at least 5 samples");
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < s.size(); ++k) {
    const Eigen::VectorXd xdot =
        (-s[k + 2].x + 8.0 * s[k + 1].x - 8.0 * s[k - 1].x + s[k - 2].x) / (12.0 * traj.step);
    worst = std::max(worst, (xdot - s[k].y).cwiseAbs().maxCoeff());
  }
  return worst;
}

Trajectory perturb_trajectory(const Trajectory& traj, const Eigen::VectorXd& direction,
                              double eps) {
  Trajectory out = traj;
  if (traj.samples.size() < 2) return out;
  const double a = traj.samples.front().t;
  const double b = traj.samples.back().t;
  const double w = std::numbers::pi / (b - a);
  for (auto& s : out.samples) {
    const double phase = w * (s.t - a);
    s.x += eps * std::sin(phase) * direction;
    s.y += eps * w * std::cos(phase) * direction;
  }
  return out;
}

}  // namespace jetgeom
