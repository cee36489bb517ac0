#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetgeom/engine.hpp"
#include "test_support.hpp"

using namespace jetgeom;
using namespace jetgeom::testing;

namespace {

const Eigen::Vector4d kOnes = Eigen::Vector4d::Ones();
const Eigen::Vector4d kOrigin = Eigen::Vector4d::Zero();

JcmLagrangian jcm(const ScalarField& s, const TemporalMetric& h) { return JcmLagrangian(s, h); }

ElectrodynamicsParams free_particle(Index n) {
  ElectrodynamicsParams p;
  p.phi = Eigen::MatrixXd::Identity(n, n);
  p.potential.assign(static_cast<std::size_t>(n), ScalarField::constant(0.0, n));
  p.potential_function = ScalarField::constant(0.0, n);
  return p;
}

}  // namespace

TEST_CASE("metric_from_lagrangian: JCM and electrodynamics") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  const ScalarField zero = ScalarField::constant(0.0);
  const SymMatrix g0 = metric_from_lagrangian(jcm(zero, unit), {1, kOrigin, kOnes}, unit);
  CHECK(max_abs(g0.matrix() - 0.5 * (Eigen::Matrix4d::Ones() - Eigen::Matrix4d::Identity())) < 1e-15);

  const TemporalMetric t2 = TemporalMetric::power(2.0);
  const JetPoint p{3.0, Eigen::Vector4d(0.2, -0.1, 0.5, 0.3), Eigen::Vector4d(0.5, 1, 1.5, 0.2)};
  const SymMatrix g = metric_from_lagrangian(jcm(sigma_cubic(), t2), p, t2);
  CHECK(rel_diff(g.matrix(), fundamental_metric(p.x, sigma_cubic()).g.matrix()) < 1e-14);

  ElectrodynamicsParams ed = free_particle(4);
  ed.potential[0] = ScalarField::linear(Eigen::Vector4d(0, 1, 0, 0));
  ed.potential_function = sigma_cubic();
  const SymMatrix ge = metric_from_lagrangian(ElectrodynamicsLagrangian(ed, unit), p, unit);
  CHECK(max_abs(ge.matrix() - Eigen::Matrix4d::Identity()) < 1e-15);
}

TEST_CASE("generic fundamental tensor is t-independent for every h kind") {
  JetSampler sampler(31);
  for (const TemporalMetric& h : {TemporalMetric::constant(2.0), TemporalMetric::power(2.0),
                                  TemporalMetric::power(-3.0), TemporalMetric::exponential(1.3)}) {
    for (int k = 0; k < 10; ++k) {
      const JetPoint p = sampler.next();
      const JcmLagrangian lag = jcm(sigma_quadratic(), h);
      const Eigen::MatrixXd ref = metric_from_lagrangian(lag, {0.5, p.x, p.y}, h).matrix();
      for (double t : {1.0, 2.0, 5.0}) {
        CHECK(max_abs(metric_from_lagrangian(lag, {t, p.x, p.y}, h).matrix() - ref) < 1e-9);
      }
    }
  }
}

TEST_CASE("exact derivatives match central differences for a polynomial Lagrangian") {
  ElectrodynamicsParams ed = free_particle(3);
  ed.phi << 2, 0.5, 0, 0.5, 1, -0.3, 0, -0.3, 1.5;
  ed.potential[0] = ScalarField::polynomial({{{0, 2, 0}, 0.7}, {{1, 0, 1}, -0.2}}, 3);
  ed.potential[2] = ScalarField::polynomial({{{3, 0, 0}, 0.1}}, 3);
  ed.potential_drift = Eigen::Vector3d(0.3, -0.1, 0.2);
  ed.potential_function = ScalarField::polynomial({{{2, 1, 0}, 0.4}, {{0, 0, 4}, -0.05}}, 3);
  const TemporalMetric h = TemporalMetric::exponential(0.4);
  const ElectrodynamicsLagrangian lag(ed, h);
  const JetGeometry<ElectrodynamicsLagrangian> geo(lag, h);
  const JetState<double> s{0.8, Eigen::Vector3d(0.3, -0.6, 0.9), Eigen::Vector3d(1.1, -0.4, 0.7)};

  std::vector<Var> vars{{Slot::t, 0}};
  for (Index i = 0; i < 3; ++i) vars.push_back({Slot::x, i});
  for (Index i = 0; i < 3; ++i) vars.push_back({Slot::y, i});
  const auto shifted = [&](JetState<double> st, Var v, double d) {
    if (v.slot == Slot::t) st.t += d;
    if (v.slot == Slot::x) st.x(v.index) += d;
    if (v.slot == Slot::y) st.y(v.index) += d;
    return st;
  };
  const double step = 1e-4;
  for (Var v : vars) {
    const double fd = (lag(shifted(s, v, step)) - lag(shifted(s, v, -step))) / (2 * step);
    const double exact = geo.d1(s, v);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    for (Var w : vars) {
      const double fd2 = (geo.d1(shifted(s, w, step), v) - geo.d1(shifted(s, w, -step), v)) / (2 * step);
      const double exact2 = geo.d2(s, v, w);
      CHECK(std::abs(fd2 - exact2) <= 1e-6 * std::max(1.0, std::abs(exact2)));
    }
  }
}

TEST_CASE("semispray examples") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  const Semispray s = semispray(jcm(sigma_x1(), unit), {1, kOrigin, kOnes}, unit);
  CHECK(max_abs(s.G - Eigen::Vector4d(5, -1, -1, -1)) < 1e-14);
  CHECK(max_abs(s.H) == 0.0);

  const Semispray flat = semispray(jcm(ScalarField::constant(0.4), unit), {1, kOrigin, kOnes}, unit);
  CHECK(max_abs(flat.G) < 1e-15);
  CHECK(max_abs(flat.H) == 0.0);

  // H is linear in y; (1,0,0,0) lies on the domain boundary, so split it as (1,1,1,1) − (0,1,1,1).
  const TemporalMetric t2 = TemporalMetric::power(2.0);
  const Eigen::VectorXd Ha = semispray(jcm(sigma_x1(), t2), {2, kOrigin, kOnes}, t2).H;
  const Eigen::VectorXd Hb = semispray(jcm(sigma_x1(), t2), {2, kOrigin, Eigen::Vector4d(0, 1, 1, 1)}, t2).H;
  CHECK(max_abs(Ha - Hb - Eigen::Vector4d(-0.25, 0, 0, 0)) < 1e-15);
}

TEST_CASE("semispray reproduces the closed-form G at random points") {
  JetSampler sampler(77);
  for (const TemporalMetric& h : {TemporalMetric::constant(1.0), TemporalMetric::power(2.0), TemporalMetric::exponential(-0.8)}) {
    for (int k = 0; k < 30; ++k) {
      const JetPoint p = sampler.next();
      const ScalarFieldEval e = sigma_cubic().evaluate(p.x);
      const double G11 = jcm_quadratic<double>(p.y);
      const Eigen::VectorXd closed =
          e.grad.dot(p.y) * p.y + (e.grad - Eigen::Vector4d::Constant(e.div_D / 3.0)) * G11;
      const Eigen::VectorXd G = semispray(jcm(sigma_cubic(), h), p, h).G;
      CHECK(rel_diff(G, closed) < 1e-12);
    }
  }
}

TEST_CASE("nonlinear_from_semispray examples and degree-1 homogeneity") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  const AdaptedFrame f = nonlinear_from_semispray(jcm(sigma_x1(), unit), {1, kOrigin, kOnes}, unit);
  CHECK(f.N(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(max_abs(nonlinear_from_semispray(jcm(ScalarField::constant(2.0), unit), {1, kOrigin, kOnes}, unit).N) < 1e-15);

  const TemporalMetric h = TemporalMetric::exponential(0.5);
  const JetGeometry<JcmLagrangian> geo(jcm(sigma_quadratic(), h), h);
  JetSampler sampler(15);
  for (int k = 0; k < 20; ++k) {
    const JetState<double> s = to_state(sampler.next());
    const Eigen::MatrixXd N = geo.nonlinear(s);
    Eigen::MatrixXd euler = Eigen::MatrixXd::Zero(4, 4);
    for (Index m = 0; m < 4; ++m) euler += partial([&](const auto& st) { return geo.nonlinear(st); }, s, {Slot::y, m}) * s.y(m);
    CHECK(max_abs(euler - N) <= 1e-6 * std::max(1.0, max_abs(N)));
  }
}

TEST_CASE("cartan_from_metric: JCM and flat electrodynamics") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  const CartanComponents c = cartan_from_metric(jcm(sigma_x1(), unit), {1, kOrigin, kOnes}, unit);
  CHECK(c.L3(0, 0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(max_abs(c.C) < 1e-15);
  CHECK(max_abs(c.Gk_j1) < 1e-15);

  const TemporalMetric t2 = TemporalMetric::power(2.0);
  const CartanComponents ct = cartan_from_metric(jcm(sigma_cubic(), t2), {1.7, Eigen::Vector4d(0.1, 0.2, -0.3, 0.4), kOnes}, t2);
  CHECK(max_abs(ct.Gk_j1) < 1e-14);
  CHECK(tensor_diff(ct.L3, cartan_L(Eigen::Vector4d(0.1, 0.2, -0.3, 0.4), sigma_cubic())) < 1e-13);

  ElectrodynamicsParams ed = free_particle(4);
  ed.potential[1] = sigma_cubic();
  const CartanComponents ce = cartan_from_metric(ElectrodynamicsLagrangian(ed, unit), {1, kOrigin, kOnes}, unit);
  CHECK(max_abs(ce.L3) == 0.0);
  CHECK(max_abs(ce.C) == 0.0);
}

TEST_CASE("torsion_generic examples and antisymmetry") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  // Torsion is linear in y; evaluate (1,0,0,0) as the difference of two in-domain points.
  const Rank3<double> a = torsion_generic(jcm(sigma_x1(), unit), {1, kOrigin, kOnes}, unit);
  const Rank3<double> b = torsion_generic(jcm(sigma_x1(), unit), {1, kOrigin, Eigen::Vector4d(0, 1, 1, 1)}, unit);
  CHECK(a(1, 0, 1) - b(1, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(max_abs(torsion_generic(jcm(ScalarField::constant(1.0), unit), {1, kOrigin, kOnes}, unit)) < 1e-15);

  JetSampler sampler(41);
  for (int k = 0; k < 10; ++k) {
    const JetPoint p = sampler.next();
    const Rank3<double> r = torsion_generic(jcm(sigma_cubic(), unit), p, unit);
    for (Index l = 0; l < 4; ++l)
      for (Index j = 0; j < 4; ++j)
        for (Index m = 0; m < 4; ++m) CHECK(std::abs(r(l, j, m) + r(l, m, j)) <= 1e-6);
  }
}

TEST_CASE("curvature_suite examples and the closed form on 50 polynomial points") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  const CurvatureSuite s = curvature_suite(jcm(sigma_x1(), unit), {1, kOrigin, kOnes}, unit);
  CHECK(s.ricci(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.scalarR == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(s.R4(1, 0, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

  const CurvatureSuite flat = curvature_suite(jcm(ScalarField::constant(1.0), unit), {1, kOrigin, kOnes}, unit);
  CHECK(max_abs(flat.R4) < 1e-15);
  CHECK(std::abs(flat.scalarR) < 1e-15);

  const TemporalMetric h = TemporalMetric::exponential(0.3);
  JetSampler sampler(50);
  for (int k = 0; k < 50; ++k) {
    const JetPoint p = sampler.next();
    const CurvatureSuite g = curvature_suite(jcm(sigma_cubic(), h), p, h);
    const Rank4<double> closed = curvature_frak(p.x, sigma_cubic());
    CHECK(tensor_diff(g.R4, closed) <= 1e-6 * max_abs(closed));
    CHECK(max_abs(g.ricci - g.ricci.transpose()) <= 1e-12 * std::max(1.0, max_abs(g.ricci)));
  }
}

TEST_CASE("em_2form: JCM vanishes, electrodynamics gives the curl") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  JetSampler sampler(88);
  for (int k = 0; k < 20; ++k) {
    const JetPoint p = sampler.next();
    CHECK(max_abs(em_2form(jcm(sigma_quadratic(), TemporalMetric::power(2.0)), p, TemporalMetric::power(2.0))) < 1e-9);
  }

  ElectrodynamicsParams ed = free_particle(4);
  ed.potential[0] = ScalarField::linear(Eigen::Vector4d(0, 1, 0, 0));  // A = (x², 0, 0, 0)
  const Eigen::MatrixXd F = em_2form(ElectrodynamicsLagrangian(ed, unit), {1, kOrigin, kOnes}, unit);
  CHECK(F(0, 1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(F(1, 0) == doctest::Approx(0.5).epsilon(1e-14));

  // A = grad φ has no curl.
  const ScalarField phi = sigma_cubic();
  ElectrodynamicsParams grad = free_particle(4);
  for (Index i = 0; i < 4; ++i) {
    std::vector<Monomial> terms;
    for (const Monomial& m : phi.terms()) {
      if (m.exponents[static_cast<std::size_t>(i)] == 0) continue;
      Monomial d = m;
      d.coeff *= d.exponents[static_cast<std::size_t>(i)]--;
      terms.push_back(d);
    }
    grad.potential[static_cast<std::size_t>(i)] = ScalarField::polynomial(terms, 4);
  }
  for (int k = 0; k < 10; ++k) {
    CHECK(max_abs(em_2form(ElectrodynamicsLagrangian(grad, unit), sampler.next(), unit)) < 1e-12);
  }
}

TEST_CASE("em_2form is antisymmetric for several Lagrangians") {
  ElectrodynamicsParams ed = free_particle(4);
  ed.phi = Eigen::Vector4d(1, 2, 0.5, 3).asDiagonal();
  ed.potential[0] = sigma_cubic();
  ed.potential[3] = sigma_quadratic();
  ed.mc = 0.7;
  ed.charge_over_mass = -1.3;
  const TemporalMetric h = TemporalMetric::exponential(0.2);
  JetSampler sampler(5);
  for (int k = 0; k < 10; ++k) {
    const JetPoint p = sampler.next();
    const Eigen::MatrixXd a = em_2form(ElectrodynamicsLagrangian(ed, h), p, h);
    const Eigen::MatrixXd b = em_2form(jcm(sigma_cubic(), h), p, h);
    CHECK(max_abs(a + a.transpose()) <= 1e-12);
    CHECK(max_abs(b + b.transpose()) <= 1e-12);
  }
}

TEST_CASE("engine errors: domain and non-invertible metric") {
  const TemporalMetric unit = TemporalMetric::constant(1.0);
  CHECK_THROWS_AS(semispray(jcm(sigma_x1(), unit), {1, kOrigin, Eigen::Vector4d(1, -1, 0, 0)}, unit), DomainError);
  CHECK_THROWS_AS(semispray(jcm(sigma_x1(), TemporalMetric::power(1.0)), {-1, kOrigin, kOnes}, TemporalMetric::power(1.0)),
                  DomainError);
  ElectrodynamicsParams ed = free_particle(4);
  ed.phi(3, 3) = 0.0;
  CHECK_THROWS_AS(semispray(ElectrodynamicsLagrangian(ed, unit), {1, kOrigin, kOnes}, unit), NonInvertibleMetric);
}
