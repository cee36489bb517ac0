#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "jetgeom/engine.hpp"

namespace jetgeom {

struct TrajectorySample {
  double t = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

/// Uniformly spaced samples of an extremal; y is the velocity dx/dt.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  double step = 0.0;
};

/// d²x/dt² = −2H − 2G from the semispray of `geo`.
template <JetLagrangian Lag>
Eigen::VectorXd extremal_acceleration(const JetGeometry<Lag>& geo, double t,
                                      const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const auto sp = geo.semispray(JetState<double>{t, x, y});
  return -2.0 * (sp.H + sp.G);
}

/// Classical fixed-step RK4 for the Euler–Lagrange system of the energy action.
/// Throws DomainError if the start is invalid and DomainExit if a step leaves the domain.
template <JetLagrangian Lag>
Trajectory integrate_extremal(const Lag& lag, const TemporalMetric& h, const JetPoint& start,
                              double t_end, int steps) {
  if (steps < 2) throw std::invalid_argument("integrate_extremal needs at least 2 steps");
  JetGeometry<Lag> geo(lag, h);
  geo.check_domain(start);

  Trajectory traj;
  traj.step = (t_end - start.t) / steps;
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  traj.samples.push_back({start.t, start.x, start.y});

  const double dt = traj.step;
  Eigen::VectorXd x = start.x;
  Eigen::VectorXd y = start.y;
  for (int k = 0; k < steps; ++k) {
    const double t = start.t + k * dt;
    if (!h.in_domain(t + 0.5 * dt) || !h.in_domain(t + dt)) {
      throw DomainExit("extremal reaches the boundary of the time domain after t = " + std::to_string(t), t);
    }
    try {
      const Eigen::VectorXd k1x = y;
      const Eigen::VectorXd k1y = extremal_acceleration(geo, t, x, y);
      const Eigen::VectorXd k2x = y + 0.5 * dt * k1y;
      const Eigen::VectorXd k2y = extremal_acceleration(geo, t + 0.5 * dt, x + 0.5 * dt * k1x, k2x);
      const Eigen::VectorXd k3x = y + 0.5 * dt * k2y;
      const Eigen::VectorXd k3y = extremal_acceleration(geo, t + 0.5 * dt, x + 0.5 * dt * k2x, k3x);
      const Eigen::VectorXd k4x = y + dt * k3y;
      const Eigen::VectorXd k4y = extremal_acceleration(geo, t + dt, x + dt * k3x, k4x);
      x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    } catch (const NonInvertibleMetric& e) {
      throw NonInvertibleMetric(std::string(e.what()) + " in the step after t = " + std::to_string(t));
    }
    JetPoint next{start.t + (k + 1) * dt, x, y};
    if (!x.allFinite() || !y.allFinite() || !lag.in_domain(next)) {
      throw DomainExit("extremal left the domain after t = " + std::to_string(t), t);
    }
    traj.samples.push_back({next.t, x, y});
  }
  return traj;
}

/// max over interior nodes of |dy/dt + 2H + 2G|, with dy/dt from the
/// fourth-order five-point stencil.
template <JetLagrangian Lag>
double el_residual(const Lag& lag, const TemporalMetric& h, const Trajectory& traj) {
  const auto& s = traj.samples;
  if (s.size() < 5) throw std::invalid_argument("el_residual needs at least 5 samples");
  JetGeometry<Lag> geo(lag, h);
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < s.size(); ++k) {
    const Eigen::VectorXd ydot =
        (-s[k + 2].y + 8.0 * s[k + 1].y - 8.0 * s[k - 1].y + s[k - 2].y) / (12.0 * traj.step);
    const Eigen::VectorXd r = ydot - extremal_acceleration(geo, s[k].t, s[k].x, s[k].y);
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

/// max over interior nodes of |dx/dt − y| with the five-point stencil.
double velocity_mismatch(const Trajectory& traj);

/// 𝔼 = ∫ L(t, x, ẋ)·√h₁₁ dt by composite Simpson (3/8 rule on the last three
/// intervals when their count is odd).
template <JetLagrangian Lag>
double action_integral(const Lag& lag, const TemporalMetric& h, const Trajectory& traj) {
  const auto& s = traj.samples;
  if (s.size() < 2) return 0.0;
  std::vector<double> f;
  f.reserve(s.size());
  for (const auto& sample : s) {
    JetPoint p{sample.t, sample.x, sample.y};
    if (!lag.in_domain(p)) {
      throw DomainError("action integrand outside the domain at t = " + std::to_string(sample.t));
    }
    f.push_back(lag(to_state(p)) * std::sqrt(h.evaluate(sample.t).h11));
  }
  const double dt = traj.step;
  const std::size_t intervals = f.size() - 1;
  if (intervals == 1) return 0.5 * dt * (f[0] + f[1]);

  std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double sum = 0.0;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2) {
    sum += dt / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  }
  if (simpson_end != intervals) {
    const std::size_t k = simpson_end;
    sum += 3.0 * dt / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
  }
  return sum;
}

/// Shifts a trajectory by ε·φ(t)·direction with φ(t) = sin(π(t − a)/(b − a)),
/// which vanishes at both endpoints.
Trajectory perturb_trajectory(const Trajectory& traj, const Eigen::VectorXd& direction,
                              double eps);

/// (𝔼(+ε) − 𝔼(−ε))/(2ε): the first variation of the action along φ·direction.
template <JetLagrangian Lag>
double action_first_variation(const Lag& lag, const TemporalMetric& h, const Trajectory& traj,
                              const Eigen::VectorXd& direction, double eps = 1e-4) {
  const double plus = action_integral(lag, h, perturb_trajectory(traj, direction, eps));
  const double minus = action_integral(lag, h, perturb_trajectory(traj, direction, -eps));
  return (plus - minus) / (2.0 * eps);
}

}  // namespace jetgeom
