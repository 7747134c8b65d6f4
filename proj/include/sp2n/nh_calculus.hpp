#ifndef SP2N_NH_CALCULUS_HPP
#define SP2N_NH_CALCULUS_HPP

#include "sp2n/rep_modules.hpp"
#include "sp2n/sympoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace sp2n {

/// Slot transformation type of a multilinear argument: tau twists by
/// u -> a u a (symmetric a), sigma by u -> a^-1 u a^-1.
enum class SlotKind : char { Tau = 't', Sigma = 's' };

/// Formal Fourier expansion sum_h q_h((pi y)^(1/2)) e^(2 pi i tr(hz)) with
/// coefficients in the cyclotomic-rational algebra extended by formal pi.
/// Coefficients are stored as polynomials in the entries of S = (pi y)^(1/2)
/// and det(S)^(-1). h runs over symmetric matrices with entries in
/// (1/denom) Z, keyed by the upper triangle of denom*h. Values live in the
/// irreducible GL_n type of rep_weight, optionally extended by multilinear
/// slots (the flat value index is slot-major, base-minor).
struct FourierExpansion {
  int n = 0;
  int N = 4;       // cyclotomic order, 4 | N
  long denom = 1;  // denominator of the h support
  Weight rep_weight;
  std::vector<SlotKind> slots;
  std::map<std::vector<long>, std::vector<SymPoly>> terms;

  int base_dim() const;
  int value_dim() const;
  bool is_empty() const { return terms.empty(); }

  /// Drops identically-zero components and empty terms.
  void prune();
};

FourierExpansion make_expansion(int n, int N, long denom, const Weight& rep_weight);

/// Value index helpers for slot-extended expansions.
int slot_stride(const FourierExpansion& f);

FourierExpansion expansion_add(const FourierExpansion& a, const FourierExpansion& b);
FourierExpansion expansion_scale(const FourierExpansion& a, const CycScalar& c);
bool expansion_equal(const FourierExpansion& a, const FourierExpansion& b);

/// True iff every coefficient lies in the even subring (a polynomial in the
/// entries of (pi y) and det(pi y)^(-1)).
bool has_even_coefficients(const FourierExpansion& f);

/// True iff every coefficient is a polynomial in the entries of (pi y)^(-1).
bool is_nearly_holomorphic(const FourierExpansion& f);

/// Maximal power of y^(-1) appearing in the coefficients (the near-holomorphy
/// degree e); requires even coefficients.
long nearly_holomorphic_degree(const FourierExpansion& f);

/// Termwise holomorphic / antiholomorphic derivative; the output gains one
/// multilinear slot in front. Requires even coefficients.
FourierExpansion op_D(const FourierExpansion& f);
FourierExpansion op_Dbar(const FourierExpansion& f);

/// Cf(u) = 4 (Df)(y u y) and Ef(u) = 4 (Dbar f)(y u y).
FourierExpansion op_C(const FourierExpansion& f);
FourierExpansion op_E(const FourierExpansion& f);

/// Shimura's weight-raising operator: D^e_rho f =
/// (rho (x) tau^e)(2y)^(-1) C^e (rho(2y) f), where rho is the type carried by
/// f itself (rep_weight plus slots).
FourierExpansion op_Drho_e(const FourierExpansion& f, int e);

/// E^p by iteration.
FourierExpansion op_E_pow(const FourierExpansion& f, int p);

/// Coefficient-wise Galois action zeta -> zeta^a; requires gcd(a, N) = 1.
FourierExpansion galois_act(long a, const FourierExpansion& f);

/// Applies a Lie algebra element R presented in block form (each monomial:
/// E+ factors, then E- factors, then B factors, rational coefficients) as an
/// operator on expansions valued in rho1, producing the rho2-twisted result
/// per the analytic dictionary: the k-part acts through rho1(iota(X)), the
/// E factors through raising/lowering chains evaluated at the matrices
/// S(iu)S and S^(-1)(-iv)S^(-1), and the frame twist is
/// rho2(y^(-1/2)) rho'(y^(1/2)). rho2 must have rho1's dimension or be a
/// one-dimensional determinant power acting scalarly.
FourierExpansion apply_lie_element(const UEAElement& R, const FourierExpansion& f,
                                   const Weight& rho1, const Weight& rho2);

/// Omega_{2i}: the center generator D_{2i} as an operator on expansions of
/// type rho. Asserts the output is even, and nearly holomorphic whenever the
/// input is (a failure signals an implementation bug).
FourierExpansion omega_op(int i, const FourierExpansion& f, const Weight& rho);

/// Spectral projection onto the chi_k eigenspace within the candidate set:
/// C_k^(-1) prod_{k' != k} sum_i sgn(chi_k - chi_k')(Omega_2i - chi_k'(D_2i)).
FourierExpansion char_projection(const Weight& k, const std::vector<Weight>& candidates,
                                 const FourierExpansion& f, const Weight& rho);

/// The ladder operator D_k: apply the scalar_ladder element Y scaled by
/// pi^((sum k_i - n k_1)/2), then project onto the highest weight line.
/// Output is scalar-valued of weight (k_1, ..., k_1).
FourierExpansion dk_operator(const Weight& k, const FourierExpansion& f);

/// Structured-text interchange format. write . read == id on canonical data.
std::string write_fx(const FourierExpansion& f);
FourierExpansion read_fx(const std::string& text);

}  // namespace sp2n

#endif  // SP2N_NH_CALCULUS_HPP
