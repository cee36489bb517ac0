#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetgeom/field_config.hpp"
#include "test_support.hpp"

using namespace jetgeom;
using namespace jetgeom::testing;

namespace {

std::vector<ScalarField> all_kinds() {
  return {ScalarField::constant(0.7), sigma_x1(), ScalarField::linear(Eigen::Vector4d(0.3, -1.2, 0.5, 2.0)),
          sigma_half_square(), sigma_quadratic(), sigma_cubic(),
          ScalarField::polynomial({{{2, 2, 1, 1}, 0.1}, {{0, 3, 0, 0}, -0.2}, {{1, 0, 0, 0}, 1.0}})};
}

double step_at(double x) { return 1e-5 * (1.0 + std::abs(x)); }

}  // namespace

TEST_CASE("eval_sigma: linear and quadratic examples") {
  const ScalarFieldEval s = eval_sigma(sigma_x1(), Eigen::Vector4d(0.3, -2, 5, 1));
  CHECK(s.value == doctest::Approx(0.3));
  CHECK(max_abs(s.grad - Eigen::Vector4d(1, 0, 0, 0)) == 0.0);
  CHECK(max_abs(s.hess) == 0.0);
  CHECK(s.div_D == 1.0);
  CHECK(s.grad_norm2 == 1.0);
  CHECK(s.laplacian == 0.0);
  CHECK(s.frakS == 0.0);

  const ScalarFieldEval q = eval_sigma(sigma_half_square(), Eigen::Vector4d(1, 2, 3, 4));
  CHECK(q.value == doctest::Approx(15.0));
  CHECK(max_abs(q.grad - Eigen::Vector4d(1, 2, 3, 4)) == 0.0);
  CHECK(max_abs(q.hess - Eigen::Matrix4d::Identity()) == 0.0);
  CHECK(q.div_D == 10.0);
  CHECK(q.laplacian == 4.0);
  CHECK(q.frakS == 4.0);
}

TEST_CASE("analytic grad and hess agree with central differences at 100 points per kind") {
  JetSampler sampler(2024);
  for (const ScalarField& f : all_kinds()) {
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd x = sampler.next().x;
      const ScalarFieldEval e = f.evaluate(x);
      for (Index i = 0; i < 4; ++i) {
        const double h = step_at(x(i));
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        const double fd_grad = (f.value(Vec<double>(xp)) - f.value(Vec<double>(xm))) / (2 * h);
        CHECK(std::abs(fd_grad - e.grad(i)) <= 1e-6 * std::max(1.0, std::abs(e.grad(i))));
        // Hessian column i from differences of the (separately verified) gradient.
        const Eigen::VectorXd fd_hess = (f.evaluate(xp).grad - f.evaluate(xm).grad) / (2 * h);
        CHECK(max_abs(fd_hess - e.hess.col(i)) <= 1e-6 * std::max(1.0, max_abs(e.hess.col(i))));
      }
    }
  }
}

TEST_CASE("aggregates are exact recomputations from grad and hess") {
  JetSampler sampler(99);
  for (const ScalarField& f : all_kinds()) {
    for (int k = 0; k < 20; ++k) {
      const ScalarFieldEval e = f.evaluate(sampler.next().x);
      CHECK(e.div_D == e.grad.sum());
      CHECK(e.grad_norm2 == e.grad.squaredNorm());
      CHECK(e.laplacian == e.hess.trace());
      CHECK(e.frakS == e.hess.sum());
      CHECK(max_abs(e.div_D_grad - e.hess.colwise().sum().transpose()) == 0.0);
      CHECK(max_abs(e.hess - e.hess.transpose()) == 0.0);
    }
  }
}

TEST_CASE("third derivatives from the Hessian stencil match the analytic values") {
  // σ = 0.15 (x³)³ − 0.25 x¹x²x⁴ + 0.2 (x¹)² x⁴ + …
  const ScalarField f = sigma_cubic();
  const Eigen::Vector4d x(0.4, -0.7, 0.9, 0.2);
  const Rank3<double> t = third_derivatives(f, x);
  CHECK(t(2, 2, 2) == doctest::Approx(0.9).epsilon(1e-8));   // 6·0.15
  CHECK(t(0, 1, 3) == doctest::Approx(-0.25).epsilon(1e-8));
  CHECK(t(3, 0, 0) == doctest::Approx(0.4).epsilon(1e-8));   // 2·0.2
  CHECK(std::abs(t(0, 0, 0)) < 1e-8);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k) CHECK(std::abs(t(i, j, k) - t(k, j, i)) < 1e-8);
}

TEST_CASE("ScalarField rejects malformed tables") {
  CHECK_THROWS_AS(ScalarField::polynomial({{{1, 0, 0, 0}, 1.0}, {{1, 0, 0, 0}, 2.0}}), MalformedField);
  CHECK_THROWS_AS(ScalarField::polynomial({{{7, 0, 0, 0}, 1.0}}), MalformedField);
  CHECK_THROWS_AS(ScalarField::polynomial({{{-1, 0, 0, 0}, 1.0}}), MalformedField);
  CHECK_THROWS_AS(ScalarField::polynomial({{{1, 0, 0}, 1.0}}), MalformedField);
  Eigen::Matrix4d q = Eigen::Matrix4d::Identity();
  q(0, 1) = 1e-9;
  CHECK_THROWS_AS(ScalarField::quadratic(q, Eigen::Vector4d::Zero()), MalformedField);
  CHECK_THROWS_AS(ScalarField::constant(std::nan("")), MalformedField);
  CHECK_NOTHROW(ScalarField::polynomial({{{2, 2, 1, 1}, 1.0}}));
}

TEST_CASE("eval_h examples") {
  const TemporalEval c = eval_h(TemporalMetric::constant(1.0), 3.7);
  CHECK(c.h11 == 1.0);
  CHECK(c.h11_inv == 1.0);
  CHECK(c.kappa == 0.0);

  const TemporalEval p = eval_h(TemporalMetric::power(2.0), 2.0);
  CHECK(p.h11 == doctest::Approx(4.0));
  CHECK(p.kappa == doctest::Approx(0.5).epsilon(1e-15));

  for (double t : {-1.0, 0.0, 0.5, 3.0}) {
    CHECK(eval_h(TemporalMetric::exponential(2.0), t).kappa == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(eval_h(TemporalMetric::power(2.0), 0.0), DomainError);
  CHECK_THROWS_AS(eval_h(TemporalMetric::power(2.0), -1.0), DomainError);
  CHECK_THROWS_AS(TemporalMetric::constant(0.0), DomainError);
}

TEST_CASE("kappa agrees with a central difference of h11 and h11·h11_inv = 1") {
  const std::vector<TemporalMetric> metrics = {TemporalMetric::constant(2.5), TemporalMetric::power(2.0),
                                               TemporalMetric::power(-1.5), TemporalMetric::exponential(0.7),
                                               TemporalMetric::exponential(-2.0)};
  for (const auto& m : metrics) {
    for (double t : {0.3, 0.9, 1.7, 4.0}) {
      const TemporalEval e = m.evaluate(t);
      const double d = 1e-5 * (1.0 + t);
      const double fd = (m.h11(t + d) - m.h11(t - d)) / (2 * d) / (2 * e.h11);
      CHECK(std::abs(fd - e.kappa) <= 1e-6 * std::max(1.0, std::abs(e.kappa)));
      CHECK(e.h11 * e.h11_inv == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(m.kappa(t) == doctest::Approx(e.kappa).epsilon(1e-14));
    }
  }
}

TEST_CASE("parse_field_config: canonical configs") {
  const FieldConfig a = parse_field_config("sigma.kind=linear sigma.coeffs=1,0,0,0 h.kind=constant h.params=1");
  CHECK(a.sigma.kind() == FieldKind::linear);
  CHECK(max_abs(a.sigma.evaluate(Eigen::Vector4d(2, 3, 4, 5)).grad - Eigen::Vector4d(1, 0, 0, 0)) == 0.0);
  CHECK(a.h.kind() == MetricKind::constant);
  CHECK(a.h.evaluate(1.0).h11 == 1.0);

  const FieldConfig b = parse_field_config("sigma.kind=constant\nsigma.coeffs=0.5\nh.kind=power\nh.params=2\n");
  CHECK(b.sigma.kind() == FieldKind::constant);
  CHECK(b.sigma.evaluate(Eigen::Vector4d::Zero()).value == 0.5);
  CHECK(b.h.evaluate(3.0).h11 == doctest::Approx(9.0));

  const FieldConfig c = parse_field_config(
      "# comment line\n"
      "sigma.kind=polynomial   # trailing comment\n"
      "sigma.terms=1.0.0.0:2.5,0.0.2.1:-1\n");
  CHECK(c.sigma.kind() == FieldKind::polynomial);
  CHECK(c.sigma.evaluate(Eigen::Vector4d(1, 0, 2, 3)).value == doctest::Approx(2.5 - 12.0));
  CHECK(c.h.kind() == MetricKind::constant);  // default unit metric

  // Q row-major followed by a: σ = ½xᵀQx + aᵀx.
  const FieldConfig q = parse_field_config(
      "sigma.kind=quadratic sigma.coeffs=1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1,1,2,3,4");
  CHECK(q.sigma.evaluate(Eigen::Vector4d(1, 1, 1, 1)).value == doctest::Approx(2.0 + 10.0));
}

TEST_CASE("parse_field_config: rejections carry key and line") {
  CHECK_THROWS_AS(parse_field_config("sigma.kind=linear h.kind=constant"), ParseError);
  const auto message = [](const char* text) {
    try {
      parse_field_config(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("sigma.kind=linear\nsigma.coeffs=1,2,3\n").find("line 2") != std::string::npos);
  CHECK(message("sigma.kind=linear\nsigma.coeffs=1,0,0,0\nsigma.colour=red\n").find("sigma.colour") != std::string::npos);
  CHECK(message("sigma.kind=linear\nsigma.coeffs=1,0,0,0\nsigma.kind=constant\n").find("sigma.kind") != std::string::npos);
  CHECK(message("sigma.kind=linear sigma.coeffs=1,0,x,0").find("not a finite real") != std::string::npos);
  CHECK_THROWS_AS(parse_field_config("sigma.kind=weird sigma.coeffs=1"), ParseError);
  CHECK_THROWS_AS(parse_field_config("sigma.kind=polynomial sigma.terms=7.0.0.0:1"), ParseError);
  CHECK_THROWS_AS(parse_field_config("sigma.kind=polynomial sigma.terms=1.0.0.0:1,1.0.0.0:2"), ParseError);
  CHECK_THROWS_AS(parse_field_config("sigma.kind=quadratic sigma.coeffs=1,1,0,0,0,1,0,0,0,0,1,0,0,0,0,1"), ParseError);
  CHECK_THROWS_AS(parse_field_config("sigma.kind=constant sigma.coeffs=1 h.kind=constant h.params=-1"), ParseError);
  CHECK_THROWS_AS(parse_field_config("sigma.kind=constant sigma.coeffs=1 h.kind=power"), ParseError);
  CHECK_THROWS_AS(parse_field_config("sigma.kind=constant sigma.coeffs=1 junk"), ParseError);
}
