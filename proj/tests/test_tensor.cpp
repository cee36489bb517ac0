#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <Eigen/LU>

#include "jetgeom/tensor.hpp"
#include "test_support.hpp"

using namespace jetgeom;
using jetgeom::testing::max_abs;

TEST_CASE("SymMatrix enforces symmetry on construction") {
  Eigen::Matrix3d m;
  m << 1, 2, 3, 2, 5, 6, 3, 6, 9;
  const SymMatrix s(m);
  CHECK(s(0, 2) == s(2, 0));
  CHECK(s.dim() == 3);

  Eigen::Matrix3d bad = m;
  bad(0, 1) += 1e-3;
  CHECK_THROWS_AS(SymMatrix{bad}, AsymmetricMatrix);

  // Rounding-level asymmetry is folded into the exact symmetric part.
  Eigen::Matrix3d nearly = m;
  nearly(0, 1) += 1e-14;
  const SymMatrix folded(nearly);
  CHECK(folded(0, 1) == folded(1, 0));
}

TEST_CASE("invert_symmetric: identity and the null-sigma metric") {
  CHECK(max_abs(invert_symmetric(SymMatrix::identity(4)).matrix() - Eigen::Matrix4d::Identity()) == 0.0);

  const Eigen::Matrix4d g = 0.5 * (Eigen::Matrix4d::Ones() - Eigen::Matrix4d::Identity());
  const Eigen::Matrix4d expected = (2.0 / 3.0) * (Eigen::Matrix4d::Ones() - 3.0 * Eigen::Matrix4d::Identity());
  CHECK(max_abs(invert_symmetric(SymMatrix(g)).matrix() - expected) < 1e-15);
}

TEST_CASE("invert_symmetric multiplies back to I on random SPD and indefinite matrices") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = u(rng);
    Eigen::MatrixXd m = trial % 2 ? Eigen::MatrixXd(b * b.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n))
                                  : Eigen::MatrixXd(b + b.transpose());
    m = 0.5 * (m + m.transpose());
    const SymMatrix s(m);
    const SymMatrix inv = invert_symmetric(s);
    CHECK(max_abs(s.matrix() * inv.matrix() - Eigen::MatrixXd::Identity(n, n)) <=
          1e-12 * std::max(1.0, max_abs(s.matrix())) * std::max(1.0, max_abs(inv.matrix())));
  }
}

TEST_CASE("invert_symmetric rejects singular input") {
  Eigen::Matrix3d m;
  m << 1, 2, 3, 2, 4, 6, 3, 6, 10;  // rank 2
  CHECK_THROWS_AS(invert_symmetric(SymMatrix(m)), SingularMatrix);
  CHECK_THROWS_AS(invert_symmetric(SymMatrix(Eigen::Matrix3d::Zero())), SingularMatrix);
}

TEST_CASE("invert_pivoted carries derivatives through the inverse") {
  // d(A⁻¹)/ds = −A⁻¹ (dA/ds) A⁻¹ for A(s) = A0 + s·A1.
  Eigen::Matrix3d a0, a1;
  a0 << 0, 1, 2, 1, 0, 1, 2, 1, 0;  // zero diagonal forces pivoting
  a1 << 1, 0, 0.5, 0, 2, 0, 0.5, 0, -1;
  Mat<Dual<double>> a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Dual<double>{a0(i, j), a1(i, j)};
  const Mat<Dual<double>> inv = invert_pivoted(a);
  const Eigen::Matrix3d i0 = a0.inverse();
  const Eigen::Matrix3d expected = -i0 * a1 * i0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(inv(i, j).v == doctest::Approx(i0(i, j)).epsilon(1e-14));
      CHECK(inv(i, j).d == doctest::Approx(expected(i, j)).epsilon(1e-13));
    }
  }
}

TEST_CASE("contract_trace: zero, Kronecker and linearity") {
  Rank4<double> zero(4);
  CHECK(max_abs(contract_trace(zero)) == 0.0);

  Rank4<double> kron(4);
  for (Index m = 0; m < 4; ++m)
    for (Index i = 0; i < 4; ++i) kron(m, i, i, m) = 1.0;  // δ^m_k δ_ij
  CHECK(max_abs(contract_trace(kron) - 4.0 * Eigen::Matrix4d::Identity()) == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Rank4<double> t1(4), t2(4);
    for (auto& e : t1.data_mut()) e = u(rng);
    for (auto& e : t2.data_mut()) e = u(rng);
    const double a = u(rng);
    const Eigen::MatrixXd lhs = contract_trace(a * t1 + t2);
    const Eigen::MatrixXd rhs = a * contract_trace(t1) + contract_trace(t2);
    CHECK(max_abs(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("Dual numbers give exact first and nested second derivatives") {
  using D = Dual<double>;
  using DD = Dual<D>;
  const double x0 = 0.7;
  const D x{x0, 1.0};
  const D f = exp(2.0 * x) * sin(x) / (1.0 + x * x) + pow(x, 2.5) - log(x) * sqrt(x) + ipow(x, 3) * cos(x);
  const double expected_d =
      (2 * std::exp(2 * x0) * std::sin(x0) + std::exp(2 * x0) * std::cos(x0)) / (1 + x0 * x0) -
      std::exp(2 * x0) * std::sin(x0) * 2 * x0 / ((1 + x0 * x0) * (1 + x0 * x0)) +
      2.5 * std::pow(x0, 1.5) - (1 / x0) * std::sqrt(x0) - std::log(x0) / (2 * std::sqrt(x0)) +
      3 * x0 * x0 * std::cos(x0) - x0 * x0 * x0 * std::sin(x0);
  CHECK(f.d == doctest::Approx(expected_d).epsilon(1e-14));

  // ∂²(x²y³)/∂x∂y = 6xy² at (x, y) = (1.5, -0.5).
  const DD xx{D{1.5, 1.0}, D{0.0, 0.0}};
  const DD yy{D{-0.5, 0.0}, D{1.0, 0.0}};
  const DD g = ipow(xx, 2) * ipow(yy, 3);
  CHECK(g.d.d == doctest::Approx(6 * 1.5 * 0.25).epsilon(1e-15));
  CHECK(g.v.d == doctest::Approx(2 * 1.5 * -0.125).epsilon(1e-15));
}
