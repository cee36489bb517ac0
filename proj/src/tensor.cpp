#include "jetgeom/tensor.hpp"

namespace jetgeom {

SymMatrix::SymMatrix(const Eigen::MatrixXd& m, double sym_tol) {
  if (m.rows() != m.cols()) throw AsymmetricMatrix("SymMatrix requires a square matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > sym_tol * scale) {
    throw AsymmetricMatrix("matrix asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(Index n) { return SymMatrix(Eigen::MatrixXd::Identity(n, n)); }

SymMatrix invert_symmetric(const SymMatrix& m, double det_tol) {
  Eigen::MatrixXd inv = invert_pivoted<double>(m.matrix(), det_tol);
  // Elimination leaves rounding-level asymmetry; the wrapper restores exact symmetry.
  return SymMatrix(inv, 1e-8);
}

}  // namespace jetgeom
