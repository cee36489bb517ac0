#include "jetgeom/validation.hpp"

#include <algorithm>
#include <future>
#include <optional>
#include <thread>

#include "jetgeom/em_form.hpp"
#include "jetgeom/engine.hpp"
#include "jetgeom/sampling.hpp"

namespace jetgeom {

namespace {

const std::vector<std::pair<std::string, bool>> kObjects = {
    {"g", false},       {"ginv", false},   {"M", false},     {"N", false},
    {"L", false},       {"torsion", false}, {"curvature", false}, {"ricci", false},
    {"scalarR", false}, {"F", true},       {"Gk_j1", true},  {"C", true}};

struct Comparison {
  double diff = 0.0;   // max |closed − generic|
  double scale = 0.0;  // max |closed|
  double generic = 0.0;
};

template <typename It>
Comparison compare_range(It a, It a_end, It b) {
  Comparison c;
  for (; a != a_end; ++a, ++b) {
    c.diff = std::max(c.diff, std::abs(*a - *b));
    c.scale = std::max(c.scale, std::abs(*a));
    c.generic = std::max(c.generic, std::abs(*b));
  }
  return c;
}

Comparison compare(const Eigen::MatrixXd& closed, const Eigen::MatrixXd& generic) {
  return compare_range(closed.data(), closed.data() + closed.size(), generic.data());
}

template <typename Tensor>
Comparison compare_tensor(const Tensor& closed, const Tensor& generic) {
  return compare_range(closed.data().begin(), closed.data().end(), generic.data().begin());
}

using PointResult = std::optional<std::vector<Comparison>>;

std::vector<Comparison> compare_point(const ScalarField& sigma, const TemporalMetric& h,
                                      const JetPoint& p) {
  const GeometryBundle b = geometry_bundle(p, sigma, h);
  const double hinv = h.evaluate(p.t).h11_inv;

  JetGeometry<JcmLagrangian> geo(JcmLagrangian(sigma, h), h);
  geo.check_domain(p);
  const JetState<double> s = to_state(p);
  const CartanT<double> c = geo.cartan(s);
  const Rank3<double> tors = geo.torsion(s);
  const Rank4<double> R4 = geo.curvature(s);
  const Eigen::MatrixXd ric = contract_trace(R4);
  const double scalarR = (c.ginv.array() * ric.array()).sum();
  const Eigen::VectorXd M = 2.0 * geo.semispray(s).H;
  const Eigen::MatrixXd F_closed = em_two_form<double>(hinv, b.g.matrix(), b.N, b.L, p.y);
  const Eigen::MatrixXd F_generic = em_two_form<double>(hinv, c.g, c.N, c.L, p.y);
  const Index n = p.x.size();

  std::vector<Comparison> out;
  out.push_back(compare(b.g.matrix(), c.g));
  out.push_back(compare(b.ginv.matrix(), c.ginv));
  out.push_back(compare(b.M, M));
  out.push_back(compare(b.N, c.N));
  out.push_back(compare_tensor(b.L, c.L));
  out.push_back(compare_tensor(b.torsion, tors));
  out.push_back(compare_tensor(b.frakR, R4));
  out.push_back(compare(b.ricci.matrix(), ric));
  out.push_back(compare(Eigen::MatrixXd::Constant(1, 1, b.scalarR),
                        Eigen::MatrixXd::Constant(1, 1, scalarR)));
  // Expected-zero objects: the closed side is identically zero except F,
  // which is assembled from the closed-form pieces.
  Comparison f = compare(F_closed, F_generic);
  f.generic = std::max(f.generic, f.scale);
  out.push_back(f);
  out.push_back(compare(Eigen::MatrixXd::Zero(n, n), c.Gk));
  out.push_back(compare_tensor(Rank3<double>(n), c.C));
  return out;
}

}  // namespace

bool ObjectDiscrepancy::passed(double rel_tol, double zero_abs) const {
  if (expected_zero) return max_magnitude <= zero_abs && max_abs <= zero_abs;
  return max_rel <= rel_tol && max_abs_at_zero <= zero_abs;
}

bool ValidationReport::passed(double rel_tol, double zero_abs) const {
  if (!errors.empty()) return false;
  return std::all_of(objects.begin(), objects.end(),
                     [&](const ObjectDiscrepancy& o) { return o.passed(rel_tol, zero_abs); });
}

const ObjectDiscrepancy& ValidationReport::object(const std::string& name) const {
  for (const auto& o : objects)
    if (o.name == name) return o;
  throw std::out_of_range("no validated object named " + name);
}

ValidationReport cross_validate(const ScalarField& sigma, const TemporalMetric& h,
                                std::size_t samples, std::uint64_t seed, unsigned threads) {
  // Draw every point up front so the sample set is independent of scheduling.
  JetSampler sampler(seed);
  std::vector<JetPoint> points;
  points.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) points.push_back(sampler.next(kJcmDim));

  std::vector<PointResult> results(samples);
  std::vector<std::string> messages(samples);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(samples, 1)));

  const auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < samples; k += stride) {
      try {
        results[k] = compare_point(sigma, h, points[k]);
      } catch (const std::exception& e) {
        messages[k] = e.what();
      }
    }
  };
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < threads; ++w) jobs.push_back(std::async(std::launch::async, work, w, threads));
  for (auto& j : jobs) j.get();

  ValidationReport report;
  report.samples = samples;
  report.seed = seed;
  for (const auto& [name, zero] : kObjects) report.objects.push_back({name, zero});
  for (std::size_t k = 0; k < samples; ++k) {
    if (!results[k]) {
      report.errors.push_back({k, points[k], messages[k]});
      continue;
    }
    for (std::size_t o = 0; o < report.objects.size(); ++o) {
      const Comparison& c = (*results[k])[o];
      ObjectDiscrepancy& d = report.objects[o];
      d.max_abs = std::max(d.max_abs, c.diff);
      d.max_magnitude = std::max(d.max_magnitude, c.generic);
      if (c.scale > 0.0) {
        d.max_rel = std::max(d.max_rel, c.diff / c.scale);
      } else {
        d.max_abs_at_zero = std::max(d.max_abs_at_zero, c.diff);
      }
    }
  }
  return report;
}

}  // namespace jetgeom
