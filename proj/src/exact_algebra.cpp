#include "sp2n/exact_algebra.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace sp2n {

std::string Gen::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case B: os << "B"; break;
    case Eplus: os << "E+"; break;
    case Eminus: os << "E-"; break;
  }
  os << "(" << i << "," << j << ")";
  return os.str();
}

int GenOrder::block_class(const Gen& g) const {
  int cls;  // within the HXYPM layout
  switch (g.kind) {
    case Gen::B:
      cls = (g.i == g.j) ? 0 : (g.i < g.j ? 1 : 2);
      break;
    case Gen::Eplus: cls = 3; break;
    default: cls = 4; break;
  }
  switch (preset_) {
    case HXYPM: return cls;
    case PMHXY: {
      static const int map_pm[5] = {2, 3, 4, 0, 1};
      return map_pm[cls];
    }
    case HYXPM: {
      static const int map_hy[5] = {0, 2, 1, 3, 4};
      return map_hy[cls];
    }
  }
  return cls;
}

bool GenOrder::less(const Gen& a, const Gen& b) const {
  int ca = block_class(a), cb = block_class(b);
  if (ca != cb) return ca < cb;
  return a < b;  // lexicographic on (kind, i, j) within a block
}

void UEAElement::add_term(const Monomial& m, const Rat& c) {
  if (sp2n::is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (sp2n::is_zero(it->second)) terms_.erase(it);
  }
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
  if (n_ == 0) n_ = o.n_;
  if (o.n_ != 0 && o.n_ != n_)
    throw std::invalid_argument("UEAElement: rank mismatch in addition");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, Rat(-c));
  return *this;
}

UEAElement UEAElement::operator+(const UEAElement& o) const {
  UEAElement r = *this;
  r += o;
  return r;
}

UEAElement UEAElement::operator-(const UEAElement& o) const {
  UEAElement r = *this;
  r -= o;
  return r;
}

UEAElement UEAElement::operator*(const Rat& c) const {
  UEAElement r(n_);
  if (sp2n::is_zero(c)) return r;
  for (const auto& [m, cc] : terms_) r.terms_.emplace(m, Rat(cc * c));
  return r;
}

LieAlgebra::LieAlgebra(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("LieAlgebra: rank must be positive");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) gens_.push_back(Gen::b(i, j));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) gens_.push_back(Gen::eplus(i, j));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) gens_.push_back(Gen::eminus(i, j));

  const auto d = [](int a, int b) { return a == b ? 1 : 0; };
  table_.resize(gens_.size() * gens_.size(), UEAElement(n));
  // Antisymmetric closure: rows for B and for E+ against E- are written from
  // the displayed relations, the mirrored pairs by negating the stored value.
  // Generator order (all B, then E+, then E-) guarantees the mirror exists.
  for (const Gen& a : gens_) {
    for (const Gen& b : gens_) {
      UEAElement v(n);
      const int i = a.i, j = a.j, k = b.i, l = b.j;
      if (a.kind == Gen::B && b.kind == Gen::B) {
        // [B_ij, B_kl] = d_jk B_il - d_il B_kj
        if (d(j, k)) v.add_term({Gen::b(i, l)}, 1);
        if (d(i, l)) v.add_term({Gen::b(k, j)}, -1);
      } else if (a.kind == Gen::B && b.kind == Gen::Eplus) {
        // [B_ij, E+_kl] = d_jk E+_il + d_jl E+_ik
        if (d(j, k)) v.add_term({Gen::eplus(i, l)}, 1);
        if (d(j, l)) v.add_term({Gen::eplus(i, k)}, 1);
      } else if (a.kind == Gen::B && b.kind == Gen::Eminus) {
        // [B_ij, E-_kl] = -d_ik E-_jl - d_il E-_jk
        if (d(i, k)) v.add_term({Gen::eminus(j, l)}, -1);
        if (d(i, l)) v.add_term({Gen::eminus(j, k)}, -1);
      } else if (a.kind == Gen::Eplus && b.kind == Gen::Eminus) {
        // [E+_ij, E-_kl] = d_ik B_jl + d_jl B_ik + d_il B_jk + d_jk B_il
        if (d(i, k)) v.add_term({Gen::b(j, l)}, 1);
        if (d(j, l)) v.add_term({Gen::b(i, k)}, 1);
        if (d(i, l)) v.add_term({Gen::b(j, k)}, 1);
        if (d(j, k)) v.add_term({Gen::b(i, l)}, 1);
      } else if ((a.kind != Gen::B && b.kind == Gen::B) ||
                 (a.kind == Gen::Eminus && b.kind == Gen::Eplus)) {
        v = table_[size_t(gen_index(b)) * gens_.size() + size_t(gen_index(a))] *
            Rat(-1);
      }
      // E+/E+ and E-/E- pairs commute: v stays zero.
      table_[size_t(gen_index(a)) * gens_.size() + size_t(gen_index(b))] = v;
    }
  }
}

void LieAlgebra::check_gen(const Gen& g) const {
  if (g.i < 1 || g.i > n_ || g.j < 1 || g.j > n_)
    throw std::out_of_range("LieAlgebra: generator index out of range");
  if (g.kind != Gen::B && g.i > g.j)
    throw std::invalid_argument("LieAlgebra: E generator not in canonical i<=j form");
}

int LieAlgebra::gen_index(const Gen& g) const {
  check_gen(g);
  const int nb = n_ * n_, ne = n_ * (n_ + 1) / 2;
  auto tri = [&](int i, int j) { return (i - 1) * n_ - (i - 1) * (i - 2) / 2 + (j - i); };
  switch (g.kind) {
    case Gen::B: return (g.i - 1) * n_ + (g.j - 1);
    case Gen::Eplus: return nb + tri(g.i, g.j);
    default: return nb + ne + tri(g.i, g.j);
  }
}

const UEAElement& LieAlgebra::bracket(const Gen& a, const Gen& b) const {
  return table_[size_t(gen_index(a)) * gens_.size() + size_t(gen_index(b))];
}

UEAElement multiply(const UEAElement& x, const UEAElement& y) {
  if (x.rank() != y.rank() && !x.is_zero() && !y.is_zero())
    throw std::invalid_argument("multiply: rank mismatch");
  UEAElement r(x.rank() ? x.rank() : y.rank());
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      Monomial m = mx;
      m.insert(m.end(), my.begin(), my.end());
      r.add_term(m, Rat(cx * cy));
    }
  }
  return r;
}

UEAElement pbw_normal_form(const UEAElement& x, const GenOrder& ord,
                           RewriteStrategy strategy) {
  const int n = x.rank();
  if (n < 1 || x.is_zero()) return x;
  static thread_local std::map<int, LieAlgebra> algebra_cache;
  auto it = algebra_cache.find(n);
  if (it == algebra_cache.end()) it = algebra_cache.emplace(n, LieAlgebra(n)).first;

  UEAElement result(n);
  std::deque<std::pair<Monomial, Rat>> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    auto [m, c] = work.front();
    work.pop_front();

    // Find the out-of-order adjacent pair dictated by the strategy.
    std::ptrdiff_t pos = -1;
    if (strategy == RewriteStrategy::LeftmostFirst) {
      for (std::size_t t = 0; t + 1 < m.size(); ++t)
        if (ord.less(m[t + 1], m[t])) { pos = std::ptrdiff_t(t); break; }
    } else {
      for (std::size_t t = m.size(); t >= 2; --t)
        if (ord.less(m[t - 1], m[t - 2])) { pos = std::ptrdiff_t(t - 2); break; }
    }
    if (pos < 0) {
      result.add_term(m, c);
      continue;
    }

    Monomial swapped = m;
    std::swap(swapped[size_t(pos)], swapped[size_t(pos) + 1]);
    work.emplace_back(std::move(swapped), c);

    const UEAElement& br = it->second.bracket(m[size_t(pos)], m[size_t(pos) + 1]);
    for (const auto& [bm, bc] : br.terms()) {
      Monomial with_bracket(m.begin(), m.begin() + pos);
      with_bracket.insert(with_bracket.end(), bm.begin(), bm.end());
      with_bracket.insert(with_bracket.end(), m.begin() + pos + 2, m.end());
      work.emplace_back(std::move(with_bracket), Rat(c * bc));
    }
  }
  return result;
}

UEAElement commutator(const UEAElement& x, const UEAElement& y) {
  return multiply(x, y) - multiply(y, x);
}

UEAElement iota_involution(const UEAElement& x) {
  UEAElement r(x.rank());
  for (const auto& [m, c] : x.terms()) {
    Monomial rev;
    rev.reserve(m.size());
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
      if (it->kind != Gen::B)
        throw std::invalid_argument("iota_involution: input contains E generators");
      rev.push_back(Gen::b(it->j, it->i));
    }
    r.add_term(rev, c);
  }
  return r;
}

std::string print_uea(const UEAElement& x) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : x.terms()) {
    if (!first) os << "\n";
    first = false;
    os << rat_to_string(c) << " *";
    if (m.empty()) {
      os << " 1";
    } else {
      for (const Gen& g : m) os << " " << g.to_string();
    }
  }
  return os.str();
}

namespace {

Gen parse_gen_token(const std::string& tok, int n) {
  Gen::Kind kind;
  std::size_t at;
  if (tok.rfind("B(", 0) == 0) { kind = Gen::B; at = 2; }
  else if (tok.rfind("E+(", 0) == 0) { kind = Gen::Eplus; at = 3; }
  else if (tok.rfind("E-(", 0) == 0) { kind = Gen::Eminus; at = 3; }
  else throw std::invalid_argument("parse_uea: bad generator token '" + tok + "'");
  std::size_t comma = tok.find(',', at);
  std::size_t close = tok.find(')', at);
  if (comma == std::string::npos || close == std::string::npos || close < comma)
    throw std::invalid_argument("parse_uea: bad generator token '" + tok + "'");
  int i = std::stoi(tok.substr(at, comma - at));
  int j = std::stoi(tok.substr(comma + 1, close - comma - 1));
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("parse_uea: generator index out of range in '" + tok + "'");
  switch (kind) {
    case Gen::B: return Gen::b(i, j);
    case Gen::Eplus: return Gen::eplus(i, j);
    default: return Gen::eminus(i, j);
  }
}

}  // namespace

UEAElement parse_uea(const std::string& text, int n) {
  UEAElement r(n);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string coeff_tok, star;
    if (!(ls >> coeff_tok >> star) || star != "*")
      throw std::invalid_argument("parse_uea: expected '<rational> * ...' in '" + line + "'");
    Rat c = rat_from_string(coeff_tok);
    Monomial m;
    std::string tok;
    bool unit = false;
    while (ls >> tok) {
      if (tok == "1" && m.empty() && !unit) { unit = true; continue; }
      if (unit)
        throw std::invalid_argument("parse_uea: generators after unit monomial");
      m.push_back(parse_gen_token(tok, n));
    }
    r.add_term(m, c);
  }
  return r;
}

}  // namespace sp2n
