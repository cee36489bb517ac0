#include "jetgeom/scalar_field.hpp"

#include <cmath>
#include <set>

namespace jetgeom {

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::constant: return "constant";
    case FieldKind::linear: return "linear";
    case FieldKind::quadratic: return "quadratic";
    case FieldKind::polynomial: return "polynomial";
  }
  return "unknown";
}

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw MalformedField(std::string("non-finite ") + what);
}

// ∂^{orders} of c·Π x_i^{e_i}, where `wrt` lists the differentiation variables.
double monomial_derivative(const Monomial& m, const Eigen::VectorXd& x, std::vector<int> wrt) {
  std::vector<int> e = m.exponents;
  double factor = m.coeff;
  for (int k : wrt) {
    auto& ek = e[static_cast<std::size_t>(k)];
    if (ek == 0) return 0.0;
    factor *= ek;
    --ek;
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) factor *= ipow(x(static_cast<Index>(i)), e[i]);
  }
  return factor;
}

}  // namespace

ScalarField ScalarField::constant(double c, Index dim) {
  require_finite(c, "constant coefficient");
  if (dim < 1) throw MalformedField("field dimension must be positive");
  return ScalarField(FieldKind::constant, dim,
                     {Monomial{std::vector<int>(static_cast<std::size_t>(dim), 0), c}});
}

ScalarField ScalarField::linear(const Eigen::VectorXd& a) {
  const Index n = a.size();
  if (n < 1) throw MalformedField("linear field needs at least one coefficient");
  std::vector<Monomial> terms;
  for (Index i = 0; i < n; ++i) {
    require_finite(a(i), "linear coefficient");
    if (a(i) == 0.0) continue;
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    terms.push_back({e, a(i)});
  }
  return ScalarField(FieldKind::linear, n, std::move(terms));
}

ScalarField ScalarField::quadratic(const Eigen::MatrixXd& q, const Eigen::VectorXd& a) {
  const Index n = q.rows();
  if (q.cols() != n || a.size() != n) throw MalformedField("quadratic field: shape mismatch");
  if (q != q.transpose()) throw MalformedField("quadratic field: Q is not symmetric");
  std::vector<Monomial> terms;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      require_finite(q(i, j), "quadratic coefficient");
      if (q(i, j) == 0.0) continue;
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] += 1;
      e[static_cast<std::size_t>(j)] += 1;
      terms.push_back({e, i == j ? 0.5 * q(i, j) : q(i, j)});
    }
  }
  for (Index i = 0; i < n; ++i) {
    require_finite(a(i), "linear coefficient");
    if (a(i) == 0.0) continue;
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    terms.push_back({e, a(i)});
  }
  return ScalarField(FieldKind::quadratic, n, std::move(terms));
}

ScalarField ScalarField::polynomial(std::vector<Monomial> terms, Index dim) {
  if (dim < 1) throw MalformedField("field dimension must be positive");
  std::set<std::vector<int>> seen;
  for (const auto& t : terms) {
    if (static_cast<Index>(t.exponents.size()) != dim) {
      throw MalformedField("monomial has " + std::to_string(t.exponents.size()) +
                           " exponents, expected " + std::to_string(dim));
    }
    int degree = 0;
    for (int e : t.exponents) {
      if (e < 0) throw MalformedField("negative exponent");
      degree += e;
    }
    if (degree > kMaxDegree) {
      throw MalformedField("monomial degree " + std::to_string(degree) + " exceeds " +
                           std::to_string(kMaxDegree));
    }
    require_finite(t.coeff, "polynomial coefficient");
    if (!seen.insert(t.exponents).second) throw MalformedField("duplicate exponent tuple");
  }
  return ScalarField(FieldKind::polynomial, dim, std::move(terms));
}

ScalarFieldEval ScalarField::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw MalformedField("point dimension does not match field");
  ScalarFieldEval r;
  r.grad = Eigen::VectorXd::Zero(dim_);
  r.hess = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    r.value += monomial_derivative(t, x, {});
    for (int i = 0; i < dim_; ++i) {
      r.grad(i) += monomial_derivative(t, x, {i});
      for (int j = i; j < dim_; ++j) r.hess(i, j) += monomial_derivative(t, x, {i, j});
    }
  }
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < i; ++j) r.hess(i, j) = r.hess(j, i);

  r.div_D = r.grad.sum();
  r.grad_norm2 = r.grad.squaredNorm();
  r.laplacian = r.hess.trace();
  r.frakS = r.hess.sum();
  r.div_D_grad = r.hess.colwise().sum().transpose();
  return r;
}

Rank3<double> third_derivatives(const ScalarField& field, const Eigen::VectorXd& x,
                                double rel_step) {
  const Index n = field.dim();
  Rank3<double> d(n);
  for (Index k = 0; k < n; ++k) {
    const double h = rel_step * (1.0 + std::abs(x(k)));
    Eigen::VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    const Eigen::MatrixXd dh = (field.evaluate(xp).hess - field.evaluate(xm).hess) / (2.0 * h);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) d(i, j, k) = dh(i, j);
  }
  return d;
}

}  // namespace jetgeom
