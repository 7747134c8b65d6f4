#ifndef SP2N_SYMPOLY_HPP
#define SP2N_SYMPOLY_HPP

#include "sp2n/cyclotomic.hpp"
#include "sp2n/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sp2n {

/// Index of the entry (i,j), i <= j, of a symmetric n x n matrix of
/// indeterminates, in row-major upper-triangle order.
inline int sym_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return (i - 1) * n - (i - 1) * (i - 2) / 2 + (j - i);
}

inline int sym_count(int n) { return n * (n + 1) / 2; }

/// Monomial in the entries of a symmetric matrix of indeterminates and a
/// nonnegative power of the inverse determinant symbol.
struct SMono {
  std::vector<std::uint16_t> e;  // exponents, one per upper-triangle entry
  long det_e = 0;                // power of det(.)^(-1), stored >= 0

  long degree(int n) const {
    long d = 0;
    for (auto x : e) d += x;
    return d - long(n) * det_e;
  }
  bool operator<(const SMono& o) const {
    if (det_e != o.det_e) return det_e < o.det_e;
    return e < o.e;
  }
  bool operator==(const SMono& o) const { return det_e == o.det_e && e == o.e; }
};

/// Sparse polynomial in the entries of one symmetric matrix of indeterminates
/// (either S = (pi y)^(1/2) or its square), localized at the determinant,
/// with CycScalar coefficients.
class SymPoly {
 public:
  SymPoly() = default;
  explicit SymPoly(const Rat& c);
  explicit SymPoly(const CycScalar& c);
  SymPoly(int nvars, const SMono& m, const CycScalar& c);

  static SymPoly variable(int i, int j, int n, const CycScalar& c);
  static SymPoly det_inverse_pow(int n, long e, const CycScalar& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<SMono, CycScalar>& terms() const { return t_; }
  long max_det_exp() const;

  void add_term(SMono m, const CycScalar& c);
  SymPoly& operator+=(const SymPoly& o);
  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator-() const;
  SymPoly operator*(const SymPoly& o) const;
  SymPoly scaled(const CycScalar& c) const;
  SymPoly galois(long a) const;

  /// Semantic equality in the localization: cross-multiplies by the expanded
  /// determinant so that det * det^(-1) cancellations are honored.
  bool equals(const SymPoly& o, int n) const;

 private:
  void promote(int nvars);

  int nvars_ = 0;
  std::map<SMono, CycScalar> t_;
};

/// Small dense matrix over SymPoly.
struct PolyMat {
  int rows = 0, cols = 0;
  std::vector<SymPoly> a;

  PolyMat() = default;
  PolyMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * std::size_t(c)) {}
  SymPoly& at(int r, int c) { return a[std::size_t(r) * std::size_t(cols) + std::size_t(c)]; }
  const SymPoly& at(int r, int c) const {
    return a[std::size_t(r) * std::size_t(cols) + std::size_t(c)];
  }
  PolyMat operator*(const PolyMat& o) const;
};

/// The determinant of the n x n symmetric variable matrix, as a polynomial.
const SymPoly& det_poly(int n, int N);

/// Adjugate entry (i,j) of the symmetric variable matrix.
const SymPoly& adjugate_entry(int i, int j, int n, int N);

/// The symmetric variable matrix itself, and its Cramer inverse
/// adj/det (entries carry the det^(-1) symbol).
PolyMat variable_matrix(int n, int N);
PolyMat inverse_variable_matrix(int n, int N);

/// Directional derivative along the symmetric unit epsilon_{ij} of a
/// polynomial in the entries of (pi y), with d(pi y)_{kl}/dy[eps] = pi eps_{kl}:
/// variables pick up a factor pi, and the det^(-1) symbol differentiates
/// through the adjugate.
SymPoly derive_direction(const SymPoly& p, int i, int j, int n, int N);

/// Rewrites an even polynomial in S (entries of the square root) as a
/// polynomial in the entries of the square M = S*S and det(M)^(-1).
/// Throws std::domain_error when the input is odd.
SymPoly square_root_to_square(const SymPoly& p, int n, int N);

/// Expands a polynomial in M = S*S back into S variables.
SymPoly square_to_square_root(const SymPoly& p, int n, int N);

/// True iff the polynomial (in the entries of M = pi y and det(M)^(-1)) lies
/// in the subring generated by the entries of M^(-1), i.e. is a polynomial in
/// the entries of (pi y)^(-1).
bool in_inverse_entries_subring(const SymPoly& p, int n, int N);

}  // namespace sp2n

#endif  // SP2N_SYMPOLY_HPP
