#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "jetgeom/dual.hpp"
#include "jetgeom/errors.hpp"
#include "jetgeom/tolerances.hpp"

namespace jetgeom {

using Index = Eigen::Index;

template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense n×n×n array, indexed (upper; lower, lower).
template <typename Scalar>
class Rank3 {
 public:
  Rank3() = default;
  explicit Rank3(Index n) : n_(n), data_(static_cast<std::size_t>(n * n * n), Scalar(0.0)) {}

  Index dim() const { return n_; }

  Scalar& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
  const Scalar& operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

  const std::vector<Scalar>& data() const { return data_; }

  template <typename F>
  auto map(F f) const -> Rank3<decltype(f(std::declval<Scalar>()))> {
    Rank3<decltype(f(std::declval<Scalar>()))> out(n_);
    for (std::size_t a = 0; a < data_.size(); ++a) out.data_mut()[a] = f(data_[a]);
    return out;
  }

  std::vector<Scalar>& data_mut() { return data_; }

  friend Rank3 operator+(Rank3 a, const Rank3& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Rank3 operator-(Rank3 a, const Rank3& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Rank3 operator*(const Scalar& s, Rank3 a) {
    for (auto& e : a.data_) e = s * e;
    return a;
  }

 private:
  std::size_t offset(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }

  Index n_ = 0;
  std::vector<Scalar> data_;
};

/// Dense n×n×n×n array, indexed (upper; lower, lower, lower).
template <typename Scalar>
class Rank4 {
 public:
  Rank4() = default;
  explicit Rank4(Index n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n), Scalar(0.0)) {}

  Index dim() const { return n_; }

  Scalar& operator()(Index l, Index i, Index j, Index k) { return data_[offset(l, i, j, k)]; }
  const Scalar& operator()(Index l, Index i, Index j, Index k) const {
    return data_[offset(l, i, j, k)];
  }

  const std::vector<Scalar>& data() const { return data_; }
  std::vector<Scalar>& data_mut() { return data_; }

  friend Rank4 operator+(Rank4 a, const Rank4& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Rank4 operator-(Rank4 a, const Rank4& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Rank4 operator*(const Scalar& s, Rank4 a) {
    for (auto& e : a.data_) e = s * e;
    return a;
  }

 private:
  std::size_t offset(Index l, Index i, Index j, Index k) const {
    return static_cast<std::size_t>(((l * n_ + i) * n_ + j) * n_ + k);
  }

  Index n_ = 0;
  std::vector<Scalar> data_;
};

template <typename Scalar>
double max_abs(const Rank3<Scalar>& t) {
  double m = 0.0;
  for (const auto& e : t.data()) m = std::max(m, std::abs(value_of(e)));
  return m;
}

template <typename Scalar>
double max_abs(const Rank4<Scalar>& t) {
  double m = 0.0;
  for (const auto& e : t.data()) m = std::max(m, std::abs(value_of(e)));
  return m;
}

/// Symmetric real matrix; symmetry is exact after construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  /// Accepts `m` if it is symmetric to `sym_tol` relative to its largest
  /// entry, then stores ½(m + mᵀ). Throws AsymmetricMatrix otherwise.
  explicit SymMatrix(const Eigen::MatrixXd& m, double sym_tol = kTolerances.sym);

  static SymMatrix identity(Index n);

  Index dim() const { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// Gauss–Jordan inversion with partial pivoting. Works for any scalar type
/// with value_of(); pivoting decisions use the real part only.
template <typename T>
Mat<T> invert_pivoted(const Mat<T>& m, double det_tol = kTolerances.det) {
  const Index n = m.rows();
  if (m.cols() != n) throw SingularMatrix("matrix is not square");
  double scale = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(value_of(m(i, j))));
  if (scale == 0.0) throw SingularMatrix("zero matrix");
  const double floor = det_tol * scale;

  Mat<T> a = m;
  Mat<T> inv = Mat<T>::Identity(n, n);
  for (Index col = 0; col < n; ++col) {
    Index piv = col;
    double best = std::abs(value_of(a(col, col)));
    for (Index r = col + 1; r < n; ++r) {
      const double c = std::abs(value_of(a(r, col)));
      if (c > best) {
        best = c;
        piv = r;
      }
    }
    if (best <= floor) {
      throw SingularMatrix("pivot " + std::to_string(best) + " below threshold in column " +
                           std::to_string(col + 1));
    }
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      inv.row(piv).swap(inv.row(col));
    }
    const T p = a(col, col);
    for (Index j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      for (Index j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

SymMatrix invert_symmetric(const SymMatrix& m, double det_tol = kTolerances.det);

/// result(i, j) = Σ_m t(m, i, j, m): contraction of the upper index with the last lower one.
template <typename Scalar>
Mat<Scalar> contract_trace(const Rank4<Scalar>& t) {
  const Index n = t.dim();
  Mat<Scalar> r = Mat<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index m = 0; m < n; ++m) r(i, j) += t(m, i, j, m);
  return r;
}

}  // namespace jetgeom
