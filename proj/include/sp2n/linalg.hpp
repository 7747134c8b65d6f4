#ifndef SP2N_LINALG_HPP
#define SP2N_LINALG_HPP

#include "sp2n/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace sp2n {

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

inline RatMat rat_zero(Eigen::Index rows, Eigen::Index cols) {
  RatMat m(rows, cols);
  m.setConstant(Rat(0));
  return m;
}

inline RatMat rat_identity(Eigen::Index nn) {
  RatMat m = rat_zero(nn, nn);
  for (Eigen::Index a = 0; a < nn; ++a) m(a, a) = 1;
  return m;
}

/// In-place reduced row echelon form. Returns the pivot columns.
inline std::vector<Eigen::Index> rref_in_place(RatMat& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!is_zero(m(r, col))) { p = r; break; }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    Rat inv = Rat(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = Rat(m(row, c) * inv);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      Rat f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        m(r, c) = Rat(m(r, c) - f * m(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline Eigen::Index rank_of(RatMat m) { return Eigen::Index(rref_in_place(m).size()); }

/// Columns span the kernel of m (exact).
inline RatMat kernel_basis(RatMat m) {
  const Eigen::Index nc = m.cols();
  std::vector<Eigen::Index> piv = rref_in_place(m);
  std::vector<bool> is_piv(size_t(nc), false);
  for (auto c : piv) is_piv[size_t(c)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < nc; ++c)
    if (!is_piv[size_t(c)]) free_cols.push_back(c);
  RatMat ker = rat_zero(nc, Eigen::Index(free_cols.size()));
  for (size_t f = 0; f < free_cols.size(); ++f) {
    Eigen::Index fc = free_cols[f];
    ker(fc, Eigen::Index(f)) = 1;
    for (size_t r = 0; r < piv.size(); ++r)
      ker(piv[r], Eigen::Index(f)) = Rat(-m(Eigen::Index(r), fc));
  }
  return ker;
}

/// Solves a*x = b; throws if inconsistent.
inline RatVec solve_linear(const RatMat& a, const RatVec& b) {
  RatMat aug(a.rows(), a.cols() + 1);
  aug.block(0, 0, a.rows(), a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<Eigen::Index> piv = rref_in_place(aug);
  if (!piv.empty() && piv.back() == a.cols())
    throw std::domain_error("solve_linear: inconsistent system");
  RatVec x = RatVec::Constant(a.cols(), Rat(0));
  for (size_t r = 0; r < piv.size(); ++r) x(piv[r]) = aug(Eigen::Index(r), a.cols());
  return x;
}

inline RatMat inverse_of(const RatMat& a) {
  const Eigen::Index nn = a.rows();
  RatMat aug(nn, 2 * nn);
  aug.block(0, 0, nn, nn) = a;
  aug.block(0, nn, nn, nn) = rat_identity(nn);
  std::vector<Eigen::Index> piv = rref_in_place(aug);
  if (Eigen::Index(piv.size()) != nn || piv.back() != nn - 1)
    throw std::domain_error("inverse_of: singular matrix");
  return aug.block(0, nn, nn, nn);
}

inline Rat determinant_of(RatMat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant_of: not square");
  Rat det = 1;
  const Eigen::Index nn = m.rows();
  for (Eigen::Index col = 0; col < nn; ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = col; r < nn; ++r)
      if (!is_zero(m(r, col))) { p = r; break; }
    if (p < 0) return Rat(0);
    if (p != col) { m.row(p).swap(m.row(col)); det = -det; }
    det *= m(col, col);
    Rat inv = Rat(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < nn; ++r) {
      if (is_zero(m(r, col))) continue;
      Rat f = Rat(m(r, col) * inv);
      for (Eigen::Index c = col; c < nn; ++c)
        m(r, c) = Rat(m(r, c) - f * m(col, c));
    }
  }
  return det;
}

}  // namespace sp2n

#endif  // SP2N_LINALG_HPP
