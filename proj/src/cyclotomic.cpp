#include "sp2n/cyclotomic.hpp"

#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sp2n {

namespace {

// Exact division of integer polynomials (ascending coefficients).
std::vector<long> poly_divide(const std::vector<long>& num,
                              const std::vector<long>& den) {
  std::vector<long> r = num;
  std::vector<long> q(num.size() - den.size() + 1, 0);
  for (std::size_t d = q.size(); d-- > 0;) {
    long lead = r[d + den.size() - 1];
    if (lead == 0) continue;
    if (lead % den.back() != 0)
      throw std::logic_error("poly_divide: inexact division");
    long f = lead / den.back();
    q[d] = f;
    for (std::size_t t = 0; t < den.size(); ++t) r[d + t] -= f * den[t];
  }
  for (long c : r)
    if (c != 0) throw std::logic_error("poly_divide: nonzero remainder");
  return q;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int N) {
  static std::map<int, std::vector<long>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (N < 1) throw std::invalid_argument("cyclotomic_polynomial: N >= 1");
  auto found = cache.find(N);
  if (found != cache.end()) return found->second;

  // Phi_m = (x^m - 1) / prod of Phi_d over proper divisors d, ascending m.
  for (int m = 1; m <= N; ++m) {
    if (N % m != 0 || cache.count(m)) continue;
    std::vector<long> num(std::size_t(m) + 1, 0);
    num[0] = -1;
    num[std::size_t(m)] = 1;
    std::vector<long> den{1};
    for (int d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      const std::vector<long>& phi_d = cache.at(d);
      std::vector<long> next(den.size() + phi_d.size() - 1, 0);
      for (std::size_t a = 0; a < den.size(); ++a)
        for (std::size_t b = 0; b < phi_d.size(); ++b)
          next[a + b] += den[a] * phi_d[b];
      den = std::move(next);
    }
    cache.emplace(m, poly_divide(num, den));
  }
  return cache.at(N);
}

CycScalar::CycScalar(const Rat& r) {
  if (!sp2n::is_zero(r)) terms_[0] = {r};
}

void CycScalar::set_order(int N) {
  if (N_ == N) return;
  if (N_ != 0 && N != 0)
    throw std::invalid_argument("CycScalar: mixed cyclotomic orders");
  if (N == 0) return;
  // Promote a rational constant into Q(zeta_N).
  std::map<long, std::vector<Rat>> promoted;
  for (const auto& [h, v] : terms_) {
    std::vector<Rat> coords(std::size_t(N), Rat(0));
    coords[0] = v[0];
    promoted.emplace(h, std::move(coords));
  }
  terms_ = std::move(promoted);
  N_ = N;
}

void CycScalar::trim() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    bool zero = true;
    for (const Rat& c : it->second)
      if (!sp2n::is_zero(c)) { zero = false; break; }
    it = zero ? terms_.erase(it) : std::next(it);
  }
}

CycScalar CycScalar::from_rat(int N, const Rat& r) {
  if (N == 0) return CycScalar(r);
  CycScalar s;
  s.N_ = N;
  if (!sp2n::is_zero(r)) {
    std::vector<Rat> coords(std::size_t(N), Rat(0));
    coords[0] = r;
    s.terms_.emplace(0, std::move(coords));
  }
  return s;
}

CycScalar CycScalar::zeta_pow(int N, long power) {
  if (N < 1 || N % 4 != 0)
    throw std::invalid_argument("CycScalar: cyclotomic order must be divisible by 4");
  const std::vector<long>& phi = cyclotomic_polynomial(N);
  const long deg = long(phi.size()) - 1;
  long p = ((power % N) + N) % N;
  // Reduce x^p mod Phi_N.
  std::vector<Rat> coords(std::size_t(N), Rat(0));
  if (p < deg) {
    coords[std::size_t(p)] = 1;
  } else {
    std::vector<Rat> poly(std::size_t(p) + 1, Rat(0));
    poly[std::size_t(p)] = 1;
    for (std::size_t d = poly.size(); d-- > std::size_t(deg);) {
      Rat lead = poly[d];
      if (sp2n::is_zero(lead)) continue;
      poly[d] = 0;
      for (long t = 0; t < deg; ++t)
        poly[d - std::size_t(deg) + std::size_t(t)] -= lead * phi[std::size_t(t)];
    }
    for (long t = 0; t < deg; ++t) coords[std::size_t(t)] = poly[std::size_t(t)];
  }
  CycScalar s;
  s.N_ = N;
  s.terms_.emplace(0, std::move(coords));
  s.trim();
  return s;
}

CycScalar CycScalar::i_pow(int N, long p) {
  long q = ((p % 4) + 4) % 4;
  return zeta_pow(N, (N / 4) * q);
}

CycScalar CycScalar::pi_pow_half(int N, long half, const Rat& scale) {
  CycScalar s = from_rat(N, scale);
  if (s.terms_.empty()) return s;
  auto node = s.terms_.extract(0);
  node.key() = half;
  s.terms_.insert(std::move(node));
  return s;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  if (o.terms_.empty()) return *this;
  if (N_ == 0 && o.N_ != 0) set_order(o.N_);
  CycScalar rhs;
  const CycScalar* src = &o;
  if (o.N_ == 0 && N_ != 0) {
    rhs = o;
    rhs.set_order(N_);
    src = &rhs;
  }
  if (src->N_ != N_)
    throw std::invalid_argument("CycScalar: mixed cyclotomic orders");
  for (const auto& [h, v] : src->terms_) {
    auto it = terms_.find(h);
    if (it == terms_.end()) {
      terms_.emplace(h, v);
    } else {
      for (std::size_t t = 0; t < v.size(); ++t) it->second[t] += v[t];
    }
  }
  trim();
  return *this;
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
  CycScalar r = *this;
  r += o;
  return r;
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& [h, v] : r.terms_)
    for (Rat& c : v) c = -c;
  return r;
}

CycScalar CycScalar::operator-(const CycScalar& o) const { return *this + (-o); }

CycScalar CycScalar::operator*(const CycScalar& o) const {
  if (terms_.empty() || o.terms_.empty()) {
    CycScalar z;
    z.N_ = N_ ? N_ : o.N_;
    return z;
  }
  CycScalar lhs = *this, rhs = o;
  if (lhs.N_ == 0) lhs.set_order(rhs.N_);
  if (rhs.N_ == 0) rhs.set_order(lhs.N_);
  if (lhs.N_ != rhs.N_)
    throw std::invalid_argument("CycScalar: mixed cyclotomic orders");
  const int N = lhs.N_;
  CycScalar out;
  out.N_ = N;
  if (N == 0) {
    // Plain rationals: convolve the pi exponents.
    for (const auto& [ha, va] : lhs.terms_)
      for (const auto& [hb, vb] : rhs.terms_) {
        auto it = out.terms_.find(ha + hb);
        if (it == out.terms_.end())
          out.terms_.emplace(ha + hb, std::vector<Rat>{Rat(va[0] * vb[0])});
        else
          it->second[0] += va[0] * vb[0];
      }
    out.trim();
    return out;
  }
  const std::vector<long>& phi = cyclotomic_polynomial(N);
  const long deg = long(phi.size()) - 1;
  for (const auto& [ha, va] : lhs.terms_) {
    for (const auto& [hb, vb] : rhs.terms_) {
      // Convolve, then reduce mod Phi_N.
      std::vector<Rat> conv(std::size_t(2 * N), Rat(0));
      for (long a = 0; a < deg; ++a) {
        if (sp2n::is_zero(va[std::size_t(a)])) continue;
        for (long b = 0; b < deg; ++b) {
          if (sp2n::is_zero(vb[std::size_t(b)])) continue;
          conv[std::size_t(a + b)] += va[std::size_t(a)] * vb[std::size_t(b)];
        }
      }
      for (std::size_t d = conv.size(); d-- > std::size_t(deg);) {
        Rat lead = conv[d];
        if (sp2n::is_zero(lead)) continue;
        conv[d] = 0;
        for (long t = 0; t < deg; ++t)
          conv[d - std::size_t(deg) + std::size_t(t)] -= lead * phi[std::size_t(t)];
      }
      auto it = out.terms_.find(ha + hb);
      if (it == out.terms_.end()) {
        std::vector<Rat> coords(std::size_t(N), Rat(0));
        for (long t = 0; t < deg; ++t) coords[std::size_t(t)] = conv[std::size_t(t)];
        out.terms_.emplace(ha + hb, std::move(coords));
      } else {
        for (long t = 0; t < deg; ++t) it->second[std::size_t(t)] += conv[std::size_t(t)];
      }
    }
  }
  out.trim();
  return out;
}

CycScalar CycScalar::operator*(const Rat& r) const {
  CycScalar out;
  out.N_ = N_;
  if (sp2n::is_zero(r)) return out;
  for (const auto& [h, v] : terms_) {
    std::vector<Rat> coords(v.size());
    for (std::size_t t = 0; t < v.size(); ++t) coords[t] = v[t] * r;
    out.terms_.emplace(h, std::move(coords));
  }
  return out;
}

bool CycScalar::operator==(const CycScalar& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (N_ != o.N_) {
    // One side may be a rational constant.
    CycScalar a = *this, b = o;
    if (a.N_ == 0) a.set_order(b.N_);
    if (b.N_ == 0) b.set_order(a.N_);
    return a.terms_ == b.terms_;
  }
  return terms_ == o.terms_;
}

CycScalar CycScalar::galois(long a) const {
  if (N_ == 0) return *this;
  long g = std::gcd(((a % N_) + N_) % N_, long(N_));
  if (g != 1) throw std::invalid_argument("CycScalar::galois: a must be a unit mod N");
  CycScalar out;
  out.N_ = N_;
  const long deg = long(cyclotomic_polynomial(N_).size()) - 1;
  for (const auto& [h, v] : terms_) {
    CycScalar acc = from_rat(N_, Rat(0));
    for (long t = 0; t < deg; ++t) {
      if (sp2n::is_zero(v[std::size_t(t)])) continue;
      acc += zeta_pow(N_, (a * t) % N_) * v[std::size_t(t)];
    }
    if (!acc.terms_.empty()) out.terms_.emplace(h, acc.terms_.begin()->second);
  }
  return out;
}

bool CycScalar::integral_pi() const {
  for (const auto& [h, v] : terms_)
    if (h % 2 != 0) return false;
  return true;
}

std::string CycScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [h, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "pi^(" << h << "/2)*[";
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (t) os << ",";
      os << rat_to_string(v[t]);
    }
    os << "]";
  }
  return os.str();
}

}  // namespace sp2n
