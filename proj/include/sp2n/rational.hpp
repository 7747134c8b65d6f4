#ifndef SP2N_RATIONAL_HPP
#define SP2N_RATIONAL_HPP

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace sp2n {

/// Exact rational scalar. Always canonical: lowest terms, denominator > 0.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string rat_to_string(const Rat& r) {
  return r.get_str();  // "p" or "p/q", canonical
}

/// Parses "p" or "p/q" with arbitrary-precision integers.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace sp2n

namespace Eigen {

// Minimal NumTraits so Eigen dense types can carry exact rationals.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 60,
    MulCost = 60
  };
};

}  // namespace Eigen

#endif  // SP2N_RATIONAL_HPP
