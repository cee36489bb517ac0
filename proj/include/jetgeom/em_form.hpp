#pragma once

#include "jetgeom/tensor.hpp"

namespace jetgeom {

/// Electromagnetic d-components
///   F_(i)j = (h¹¹/2)[g_jr N^r_i − g_ir N^r_j + (g_ir L^r_jm − g_jr L^r_im) yᵐ],
/// with N(r, i) = N^(r)_(1)i and L(r, j, m) = L^r_jm.
template <typename T>
Mat<T> em_two_form(const T& h11_inv, const Mat<T>& g, const Mat<T>& N, const Rank3<T>& L,
                   const Vec<T>& y) {
  const Index n = g.rows();
  // Ly(r, j) = L^r_jm yᵐ
  Mat<T> Ly = Mat<T>::Zero(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index j = 0; j < n; ++j)
      for (Index m = 0; m < n; ++m) Ly(r, j) += L(r, j, m) * y(m);
  const Mat<T> gN = g * N;    // (g N)(j, i) = g_jr N^r_i
  const Mat<T> gLy = g * Ly;  // (g Ly)(i, j) = g_ir L^r_jm yᵐ
  Mat<T> F(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      F(i, j) = (0.5 * h11_inv) * ((gN(j, i) - gN(i, j)) + (gLy(i, j) - gLy(j, i)));
  return F;
}

}  // namespace jetgeom
