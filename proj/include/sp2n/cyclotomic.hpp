#ifndef SP2N_CYCLOTOMIC_HPP
#define SP2N_CYCLOTOMIC_HPP

#include "sp2n/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace sp2n {

/// Coefficients of the N-th cyclotomic polynomial, ascending degree.
const std::vector<long>& cyclotomic_polynomial(int N);

/// Element of Q(zeta_N)[pi^(1/2), pi^(-1/2)]: a finite map from half-integer
/// pi exponents to vectors of N rationals (power-basis coordinates, reduced
/// mod Phi_N, so entries at degree >= phi(N) are zero). pi is a formal
/// transcendental; the Galois action fixes it and sends zeta to zeta^a.
/// Half exponents only appear transiently inside operator pipelines; anything
/// serialized must sit at integer pi powers. N = 0 marks a plain rational
/// constant that adopts the other operand's field on arithmetic.
class CycScalar {
 public:
  CycScalar() = default;
  explicit CycScalar(const Rat& r);  // rational constant, N = 0

  static CycScalar from_rat(int N, const Rat& r);
  static CycScalar zeta_pow(int N, long power);
  static CycScalar i_unit(int N) { return zeta_pow(N, N / 4); }
  static CycScalar i_pow(int N, long p);
  /// pi^(half/2).
  static CycScalar pi_pow_half(int N, long half, const Rat& scale = Rat(1));

  int order() const { return N_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<long, std::vector<Rat>>& terms() const { return terms_; }

  CycScalar& operator+=(const CycScalar& o);
  CycScalar operator+(const CycScalar& o) const;
  CycScalar operator-(const CycScalar& o) const;
  CycScalar operator-() const;
  CycScalar operator*(const CycScalar& o) const;
  CycScalar operator*(const Rat& r) const;
  bool operator==(const CycScalar& o) const;
  bool operator!=(const CycScalar& o) const { return !(*this == o); }

  /// zeta -> zeta^a; requires gcd(a, N) = 1. pi and rationals are fixed.
  CycScalar galois(long a) const;

  /// True iff every pi exponent is integral.
  bool integral_pi() const;

  std::string to_string() const;  // debugging aid

 private:
  void set_order(int N);
  void trim();

  int N_ = 0;
  std::map<long, std::vector<Rat>> terms_;  // half-exponent -> coords
};

}  // namespace sp2n

#endif  // SP2N_CYCLOTOMIC_HPP
