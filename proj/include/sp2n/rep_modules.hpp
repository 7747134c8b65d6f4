#ifndef SP2N_REP_MODULES_HPP
#define SP2N_REP_MODULES_HPP

#include "sp2n/exact_algebra.hpp"
#include "sp2n/linalg.hpp"
#include "sp2n/weights_chars.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace sp2n {

/// Pi_{i<j} (k_i - k_j + j - i) / (j - i).
long weyl_dimension(const Weight& k);

/// Rational model of the irreducible GL_n representation with highest weight
/// k, realized inside (standard)^(tensor d) (x) det^(k_n) with d = sum(k_i - k_n).
/// Basis vectors are weight-homogeneous; index 0 is the highest weight vector,
/// reachable from it by the recorded lowering words.
class GLIrrep {
 public:
  int n = 0;
  Weight highest_weight;
  int dim = 0;
  long tensor_degree = 0;  // d
  long det_twist = 0;      // k_n

  RatMat basis;                 // ambient (n^d) x dim, column b = f_b
  std::vector<Weight> weights;  // weight of each basis vector
  int hw_index = 0;
  // f_b = e_{w1} (e_{w2} (... (e_{wm} v0))); pairs (a,b) are lowering e_{a,b}, a > b.
  std::vector<std::vector<std::pair<int, int>>> lowering_words;

  /// Derived action of B(i,j) (as e_{ij} + k_n delta_{ij}) on the basis.
  const RatMat& action(int i, int j) const {
    return action_[std::size_t(i - 1) * std::size_t(n) + std::size_t(j - 1)];
  }

  /// Contravariant Gram matrix on F_k: <f_a, f_b> with theta(B(i,j)) = B(j,i)
  /// and <v0, v0> = 1. Weight spaces pair orthogonally.
  const RatMat& gram() const { return gram_; }

  /// Homogeneous degree sum(k_i).
  long homogeneous_degree() const {
    long s = 0;
    for (long v : highest_weight.k) s += v;
    return s;
  }

  /// Group evaluation rho(A) over any commutative ring: entries row-major,
  /// out[r*dim + c] = coefficient of f_r in rho(A) f_c. det_inv must be the
  /// ring inverse of det(A) when the determinant twist is negative (it is
  /// ignored otherwise).
  template <typename Ring>
  std::vector<Ring> evaluate_group(const std::vector<Ring>& A_rowmajor,
                                   const Ring& det_inv) const;

  /// Derived Lie-algebra evaluation rho(iota(X)) for X in U(k_Q): reverses
  /// each monomial, transposes each B factor, and multiplies action matrices.
  RatMat evaluate_iota(const UEAElement& X) const;

  RatMat coords_in_basis(const RatVec& ambient_vec) const;

 private:
  friend std::shared_ptr<const GLIrrep> build_irrep(const Weight&);
  std::vector<RatMat> action_;
  RatMat gram_;
  std::vector<Eigen::Index> pivot_rows_;
  RatMat pivot_inverse_;

  template <typename Ring>
  std::vector<Ring> apply_tensor(const std::vector<Ring>& A,
                                 Eigen::Index column) const;
};

/// Builds (and caches) the rational model for dominant k.
std::shared_ptr<const GLIrrep> build_irrep(const Weight& k);

/// Multiset of E+ index pairs (i <= j), kept sorted; p+ is abelian.
using EMono = std::vector<std::pair<int, int>>;

/// Element of one graded piece of N(k) = U(p+) (x) F_k over Q.
struct VermaVector {
  std::shared_ptr<const GLIrrep> rep;
  int grade = 0;
  std::map<std::pair<EMono, int>, Rat> coords;

  bool is_zero() const { return coords.empty(); }
  void add(const EMono& m, int b, const Rat& c);
  VermaVector& operator+=(const VermaVector& o);
  VermaVector operator*(const Rat& c) const;
  bool operator==(const VermaVector& o) const;
};

/// v_k = 1 (x) v0, the grade-0 highest weight vector.
VermaVector highest_weight_vector(const std::shared_ptr<const GLIrrep>& rep);

/// Action of a single generator: E+ multiplies (grade +1), B acts by
/// derivation on the E+ factors plus the F_k action (grade 0), E- commutes
/// through the E+ factors and annihilates F_k (grade -1).
VermaVector act_gen(const Gen& g, const VermaVector& v);

/// Action of a full element, extended right-to-left along monomials.
/// Returns the graded components of X v.
std::map<int, VermaVector> act_uea(const UEAElement& X, const VermaVector& v);

/// Weight of a graded basis element: weight(E+ part) + weight(f_b).
Weight emono_weight(const EMono& m, const Weight& base);

/// All E+ multisets of the given degree, deterministic order.
std::vector<EMono> grade_monomials(int n, int m);

/// Q-basis of the highest weight vectors of weight mu in grade m of N(k).
std::vector<VermaVector> ktype_hwvs(const Weight& k, int m, const Weight& mu);

/// Checks mu_i >= k'_i for every K-type highest weight mu found in grades
/// 0..m_max of N(kprime).
bool ktype_bound_check(const Weight& kprime, int m_max);

/// Contravariant form on a graded piece: <v_k, v_k> = 1 and
/// <X u, v> = <u, theta(X) v> with theta swapping E+ <-> E-, B(i,j) -> B(j,i).
Rat contravariant_form(const VermaVector& u, const VermaVector& v);

/// Coefficient of the highest weight vector in an F_k element.
Rat lrho_project(const GLIrrep& rep, const RatVec& coords);

struct LadderResult {
  UEAElement Y;        // in U(p+) U(k_Q), normalized on its least monomial
  int grade = 0;       // p+ degree m
  int solution_dim = 0;  // dimension of the scalar-K-type hw space at grade m
};

/// The scalar-K-type ladder element of weight (k_1, ..., k_1): Y v_k is a
/// radical-avoiding highest weight vector in grade (n k_1 - sum k_i)/2.
/// Requires dominant k, equal parities, k_n > n.
LadderResult scalar_ladder(const Weight& k);

// --- template implementations ---

template <typename Ring>
std::vector<Ring> GLIrrep::apply_tensor(const std::vector<Ring>& A,
                                        Eigen::Index column) const {
  const long d = tensor_degree;
  std::size_t amb = std::size_t(basis.rows());
  std::vector<Ring> cur(amb);
  for (std::size_t r = 0; r < amb; ++r) cur[r] = Ring(basis(Eigen::Index(r), column));
  // Mode products: contract A along each tensor slot.
  std::vector<long> stride(static_cast<std::size_t>(d), 0);
  for (long t = d - 1, s = 1; t >= 0; --t, s *= n) stride[std::size_t(t)] = s;
  for (long t = 0; t < d; ++t) {
    std::vector<Ring> next(amb);
    for (std::size_t I = 0; I < amb; ++I) {
      long digit = (long(I) / stride[std::size_t(t)]) % n;
      long base = long(I) - digit * stride[std::size_t(t)];
      Ring acc;
      for (long a = 0; a < n; ++a) {
        const Ring& x = cur[std::size_t(base + a * stride[std::size_t(t)])];
        acc += A[std::size_t(digit) * std::size_t(n) + std::size_t(a)] * x;
      }
      next[I] = std::move(acc);
    }
    cur = std::move(next);
  }
  return cur;
}

template <typename Ring>
std::vector<Ring> GLIrrep::evaluate_group(const std::vector<Ring>& A,
                                          const Ring& det_inv) const {
  // det(A) by permutation expansion; ranks here are tiny.
  Ring det;
  {
    std::vector<int> perm(std::size_t(n), 0);
    for (int a = 0; a < n; ++a) perm[std::size_t(a)] = a;
    do {
      int inv = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (perm[std::size_t(a)] > perm[std::size_t(b)]) ++inv;
      Ring prod = Ring(Rat(inv % 2 == 0 ? 1 : -1));
      for (int a = 0; a < n; ++a)
        prod = prod * A[std::size_t(a) * std::size_t(n) + std::size_t(perm[std::size_t(a)])];
      det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  Ring det_pow = Ring(Rat(1));
  const Ring& det_base = det_twist >= 0 ? det : det_inv;
  for (long e = 0; e < std::abs(det_twist); ++e) det_pow = det_pow * det_base;

  std::vector<Ring> out(std::size_t(dim) * std::size_t(dim));
  for (int c = 0; c < dim; ++c) {
    std::vector<Ring> img = apply_tensor(A, c);
    // Express in the basis through the precomputed pivot solver.
    for (int r = 0; r < dim; ++r) {
      Ring acc;
      for (int s = 0; s < dim; ++s) {
        const Rat& w = pivot_inverse_(r, s);
        if (sp2n::is_zero(w)) continue;
        acc += Ring(w) * img[std::size_t(pivot_rows_[std::size_t(s)])];
      }
      out[std::size_t(r) * std::size_t(dim) + std::size_t(c)] = acc * det_pow;
    }
  }
  return out;
}

}  // namespace sp2n

#endif  // SP2N_REP_MODULES_HPP
