#pragma once

#include "tstruct/field.hpp"

#include <Eigen/Core>

#include <vector>

namespace tstruct {

template <class F>
using Mat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;

template <class F>
struct Echelon {
  Mat<F> reduced;            // reduced row echelon form
  std::vector<int> pivots;   // pivot column of each nonzero row
};

template <class F>
Echelon<F> row_reduce(Mat<F> m) {
  Echelon<F> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(r));
    const F inv = m(r, c).inverse();
    m.row(r) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r && !m(i, c).is_zero()) m.row(i) -= m(i, c) * m.row(r);
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class F>
int rank(const Mat<F>& m) {
  if (m.size() == 0) return 0;
  return static_cast<int>(row_reduce<F>(m).pivots.size());
}

// Columns form a basis of the null space.
template <class F>
Mat<F> nullspace(const Mat<F>& m) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Mat<F>::Identity(cols, cols);
  auto e = row_reduce<F>(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  const Eigen::Index nfree = cols - static_cast<Eigen::Index>(e.pivots.size());
  Mat<F> basis = Mat<F>::Zero(cols, nfree);
  Eigen::Index j = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    basis(c, j) = F(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], j) = -e.reduced(r, c);
    ++j;
  }
  return basis;
}

// Columns form a basis of the column space.
template <class F>
Mat<F> column_basis(const Mat<F>& m) {
  if (m.cols() == 0 || m.rows() == 0) return Mat<F>(m.rows(), 0);
  auto e = row_reduce<F>(m);
  Mat<F> out(m.rows(), static_cast<Eigen::Index>(e.pivots.size()));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.col(i) = m.col(e.pivots[i]);
  return out;
}

// Rows span the left null space: out * m == 0.
template <class F>
Mat<F> left_nullspace(const Mat<F>& m) {
  return nullspace<F>(m.transpose()).transpose();
}

// Solves a * x == b for one x, assuming a solution exists.
template <class F>
bool solve(const Mat<F>& a, const Mat<F>& b, Mat<F>& x) {
  const Eigen::Index n = a.cols();
  Mat<F> aug(a.rows(), n + b.cols());
  aug << a, b;
  auto e = row_reduce<F>(aug);
  x = Mat<F>::Zero(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return false;
    x.row(e.pivots[r]) = e.reduced.block(r, n, 1, b.cols());
  }
  return true;
}

// l * m == I for a matrix with independent columns.
template <class F>
Mat<F> left_inverse(const Mat<F>& m) {
  Mat<F> x;
  Mat<F> id = Mat<F>::Identity(m.cols(), m.cols());
  solve<F>(m.transpose(), id, x);
  return x.transpose();
}

// m * r == I for a matrix with independent rows.
template <class F>
Mat<F> right_inverse(const Mat<F>& m) {
  Mat<F> x;
  Mat<F> id = Mat<F>::Identity(m.rows(), m.rows());
  solve<F>(m, id, x);
  return x;
}

template <class F>
Mat<F> kron(const Mat<F>& a, const Mat<F>& b) {
  Mat<F> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class F>
bool is_zero(const Mat<F>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

}  // namespace tstruct
