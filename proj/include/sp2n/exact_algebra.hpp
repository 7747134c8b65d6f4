#ifndef SP2N_EXACT_ALGEBRA_HPP
#define SP2N_EXACT_ALGEBRA_HPP

#include "sp2n/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sp2n {

/// Basis generators of sp(2n,C): B(i,j) spanning the compact part and the
/// symmetric families E+(i,j), E-(i,j) spanning the two abelian off-blocks.
/// E generators are stored with i <= j; B indices are unrestricted.
struct Gen {
  enum Kind : std::uint8_t { B = 0, Eplus = 1, Eminus = 2 };

  Kind kind;
  int i;  // 1-based
  int j;  // 1-based

  static Gen b(int i, int j) { return Gen{B, i, j}; }
  static Gen eplus(int i, int j) {
    return i <= j ? Gen{Eplus, i, j} : Gen{Eplus, j, i};
  }
  static Gen eminus(int i, int j) {
    return i <= j ? Gen{Eminus, i, j} : Gen{Eminus, j, i};
  }

  bool operator==(const Gen& o) const {
    return kind == o.kind && i == o.i && j == o.j;
  }
  bool operator!=(const Gen& o) const { return !(*this == o); }
  bool operator<(const Gen& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }

  std::string to_string() const;
};

/// Free word in the generators; the empty word is the identity of U(g).
using Monomial = std::vector<Gen>;

/// Total order on generators used by the PBW rewriter. The block layouts:
///   HXYPM:  B(a,a) < B(a<b) < B(a>b) < E+ < E-
///   PMHXY:  E+ < E- < B(a,a) < B(a<b) < B(a>b)
///   HYXPM:  B(a,a) < B(a>b) < B(a<b) < E+ < E-
/// Within a block, ties break lexicographically on (kind, i, j).
/// HYXPM puts compact raising generators rightmost among the B's, which is
/// the order used for highest-weight evaluation.
class GenOrder {
 public:
  enum Preset { HXYPM, PMHXY, HYXPM };

  explicit GenOrder(Preset p) : preset_(p) {}

  int block_class(const Gen& g) const;
  bool less(const Gen& a, const Gen& b) const;
  Preset preset() const { return preset_; }

  static GenOrder hxypm() { return GenOrder(HXYPM); }
  static GenOrder pmhxy() { return GenOrder(PMHXY); }
  static GenOrder hyxpm() { return GenOrder(HYXPM); }

 private:
  Preset preset_;
};

enum class RewriteStrategy { LeftmostFirst, RightmostFirst };

/// Exact-rational linear combination of generator words at a fixed rank.
/// No zero coefficients are stored.
class UEAElement {
 public:
  UEAElement() : n_(0) {}
  explicit UEAElement(int n) : n_(n) {}

  static UEAElement zero(int n) { return UEAElement(n); }
  static UEAElement one(int n) {
    UEAElement e(n);
    e.add_term(Monomial{}, 1);
    return e;
  }
  static UEAElement generator(int n, const Gen& g) {
    UEAElement e(n);
    e.add_term(Monomial{g}, 1);
    return e;
  }

  int rank() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rat& c);

  UEAElement& operator+=(const UEAElement& o);
  UEAElement& operator-=(const UEAElement& o);
  UEAElement operator+(const UEAElement& o) const;
  UEAElement operator-(const UEAElement& o) const;
  UEAElement operator*(const Rat& c) const;
  UEAElement operator-() const { return *this * Rat(-1); }
  bool operator==(const UEAElement& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }

 private:
  int n_;
  std::map<Monomial, Rat> terms_;
};

/// The rational structure constants of sp(2n). Bracket values for all
/// generator pairs are tabulated at construction.
class LieAlgebra {
 public:
  explicit LieAlgebra(int n);

  int rank() const { return n_; }
  const std::vector<Gen>& generators() const { return gens_; }

  /// [a, b] as a degree-<=1 element.
  const UEAElement& bracket(const Gen& a, const Gen& b) const;

 private:
  void check_gen(const Gen& g) const;
  int gen_index(const Gen& g) const;

  int n_;
  std::vector<Gen> gens_;
  std::vector<UEAElement> table_;  // gen_index(a) * gens_.size() + gen_index(b)
};

/// Bilinear concatenation product in U(g).
UEAElement multiply(const UEAElement& x, const UEAElement& y);

/// Rewrites x so that every monomial is non-decreasing w.r.t. ord, using
/// ab -> ba + [a,b] on adjacent out-of-order pairs. Equal to x in U(g).
UEAElement pbw_normal_form(const UEAElement& x, const GenOrder& ord,
                           RewriteStrategy strategy = RewriteStrategy::LeftmostFirst);

/// xy - yx.
UEAElement commutator(const UEAElement& x, const UEAElement& y);

/// The anti-involution on U(k): reverses monomials and transposes B(i,j).
/// Rejects input containing E generators.
UEAElement iota_involution(const UEAElement& x);

/// Textual serialization: one term per line, `<rational> * <gens>`,
/// the empty monomial printing as `1`. parse . print == id.
std::string print_uea(const UEAElement& x);
UEAElement parse_uea(const std::string& text, int n);

}  // namespace sp2n

#endif  // SP2N_EXACT_ALGEBRA_HPP
