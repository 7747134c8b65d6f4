#ifndef SP2N_WEIGHTS_CHARS_HPP
#define SP2N_WEIGHTS_CHARS_HPP

#include "sp2n/exact_algebra.hpp"

#include <set>
#include <string>
#include <vector>

namespace sp2n {

/// Integral weight (k_1, ..., k_n).
struct Weight {
  std::vector<long> k;

  Weight() = default;
  explicit Weight(std::vector<long> entries) : k(std::move(entries)) {}

  int rank() const { return int(k.size()); }
  long operator[](int a) const { return k[size_t(a)]; }  // 0-based access

  /// Membership in Lambda+: k_1 >= ... >= k_n.
  bool is_dominant() const {
    for (std::size_t a = 0; a + 1 < k.size(); ++a)
      if (k[a] < k[a + 1]) return false;
    return true;
  }
  /// Membership in Lambda++: dominant with k_n >= 1.
  bool is_strictly_positive() const {
    return is_dominant() && !k.empty() && k.back() >= 1;
  }

  bool operator==(const Weight& o) const { return k == o.k; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const { return k < o.k; }

  std::string to_string() const;          // comma-separated entries
  static Weight parse(const std::string& s);
};

/// Element tau_I sigma of the Weyl group: a permutation of {1..n} together
/// with the sign-flip set I.
struct WeylElement {
  std::vector<int> sigma;     // sigma[j] in 1..n, image of j+1
  std::vector<bool> flip;     // flip[j] == true iff j+1 in I

  int rank() const { return int(sigma.size()); }
};

std::vector<WeylElement> all_weyl_elements(int n);

/// Dot action: entry j of the result is eps_j (k_{sigma(j)} - sigma(j)) + j.
Weight dot_action(const WeylElement& w, const Weight& k);

/// Full dot orbit (duplicates removed). Guarded to n <= 6.
std::set<Weight> dot_orbit(const Weight& k);

/// Highest-weight evaluation of D at k: normal-order so that compact raising
/// generators sit rightmost, drop every monomial that does not consist purely
/// of diagonal B(a,a) factors, and evaluate those factors at k_a.
/// For central D this is the infinitesimal character chi_k(D).
Rat infinitesimal_character(const Weight& k, const UEAElement& D);

/// The vector (chi_k(D_2), ..., chi_k(D_2n)).
std::vector<Rat> character_vector(const Weight& k);

/// True iff the character vectors of k and kprime differ.
bool characters_separate(const Weight& k, const Weight& kprime);

/// {r : 1 <= r <= k_n - n, r == k_n - n (mod 2)}, ascending.
std::vector<long> critical_points(const Weight& k);

}  // namespace sp2n

#endif  // SP2N_WEIGHTS_CHARS_HPP
