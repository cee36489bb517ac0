#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "jetgeom/tensor.hpp"

namespace jetgeom {

enum class FieldKind { constant, linear, quadratic, polynomial };

std::string to_string(FieldKind kind);

struct Monomial {
  std::vector<int> exponents;
  double coeff = 0.0;
};

/// σ and its derivatives at one point, with the aggregates the closed forms use.
struct ScalarFieldEval {
  double value = 0.0;
  Eigen::VectorXd grad;        // σ_i
  Eigen::MatrixXd hess;        // σ_ij
  double div_D = 0.0;          // Σ σ_i
  double grad_norm2 = 0.0;     // Σ σ_i²
  double laplacian = 0.0;      // Σ σ_ii
  double frakS = 0.0;          // Σ_{p,q} σ_pq
  Eigen::VectorXd div_D_grad;  // ∂_i div D = Σ_p σ_pi
};

/// Conformal factor σ(x). Every kind is stored as an exact polynomial, so
/// derivatives are analytic and value() can be evaluated on dual numbers.
class ScalarField {
 public:
  static constexpr int kMaxDegree = 6;

  /// σ ≡ 0 on ℝ⁴.
  ScalarField() = default;

  static ScalarField constant(double c, Index dim = 4);
  static ScalarField linear(const Eigen::VectorXd& a);
  /// σ = ½ xᵀQx + aᵀx; Q must be exactly symmetric.
  static ScalarField quadratic(const Eigen::MatrixXd& q, const Eigen::VectorXd& a);
  static ScalarField polynomial(std::vector<Monomial> terms, Index dim = 4);

  FieldKind kind() const { return kind_; }
  Index dim() const { return dim_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  template <typename T>
  T value(const Vec<T>& x) const {
    T sum(0.0);
    for (const auto& term : terms_) {
      T prod(term.coeff);
      for (Index i = 0; i < dim_; ++i) {
        const int e = term.exponents[static_cast<std::size_t>(i)];
        if (e > 0) prod = prod * ipow(x(i), e);
      }
      sum = sum + prod;
    }
    return sum;
  }

  ScalarFieldEval evaluate(const Eigen::VectorXd& x) const;

 private:
  ScalarField(FieldKind kind, Index dim, std::vector<Monomial> terms)
      : kind_(kind), dim_(dim), terms_(std::move(terms)) {}

  FieldKind kind_ = FieldKind::constant;
  Index dim_ = 4;
  std::vector<Monomial> terms_;
};

inline ScalarFieldEval eval_sigma(const ScalarField& field, const Eigen::VectorXd& x) {
  return field.evaluate(x);
}

/// ∂_k σ_ij by central differences of the analytic Hessian, step rel_step·(1+|x_k|).
Rank3<double> third_derivatives(const ScalarField& field, const Eigen::VectorXd& x,
                                double rel_step = 1e-4);

}  // namespace jetgeom
