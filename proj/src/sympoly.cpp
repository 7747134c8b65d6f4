#include "sp2n/sympoly.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

namespace sp2n {

SymPoly::SymPoly(const Rat& c) {
  if (!sp2n::is_zero(c)) t_.emplace(SMono{}, CycScalar(c));
}

SymPoly::SymPoly(const CycScalar& c) {
  if (!c.is_zero()) t_.emplace(SMono{}, c);
}

SymPoly::SymPoly(int nvars, const SMono& m, const CycScalar& c) : nvars_(nvars) {
  if (!c.is_zero()) t_.emplace(m, c);
}

SymPoly SymPoly::variable(int i, int j, int n, const CycScalar& c) {
  SMono m;
  m.e.assign(std::size_t(sym_count(n)), 0);
  m.e[std::size_t(sym_index(i, j, n))] = 1;
  return SymPoly(sym_count(n), m, c);
}

SymPoly SymPoly::det_inverse_pow(int n, long e, const CycScalar& c) {
  SMono m;
  m.e.assign(std::size_t(sym_count(n)), 0);
  m.det_e = e;
  return SymPoly(sym_count(n), m, c);
}

long SymPoly::max_det_exp() const {
  long m = 0;
  for (const auto& [mono, c] : t_) m = std::max(m, mono.det_e);
  return m;
}

void SymPoly::promote(int nvars) {
  if (nvars_ >= nvars) return;
  std::map<SMono, CycScalar> next;
  for (auto& [m, c] : t_) {
    SMono mm = m;
    mm.e.resize(std::size_t(nvars), 0);
    next.emplace(std::move(mm), std::move(c));
  }
  t_ = std::move(next);
  nvars_ = nvars;
}

void SymPoly::add_term(SMono m, const CycScalar& c) {
  if (c.is_zero()) return;
  if (int(m.e.size()) > nvars_) promote(int(m.e.size()));
  if (int(m.e.size()) < nvars_) m.e.resize(std::size_t(nvars_), 0);
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  if (&o == this) {
    SymPoly copy = o;
    for (const auto& [m, c] : copy.t_) add_term(m, c);
    return *this;
  }
  for (const auto& [m, c] : o.t_) add_term(m, c);
  if (nvars_ < o.nvars_) promote(o.nvars_);
  return *this;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  SymPoly r = *this;
  r += o;
  return r;
}

SymPoly SymPoly::operator-() const {
  SymPoly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
  SymPoly out;
  for (const auto& [ma, ca] : t_) {
    for (const auto& [mb, cb] : o.t_) {
      SMono m;
      m.det_e = ma.det_e + mb.det_e;
      m.e.assign(std::max(ma.e.size(), mb.e.size()), 0);
      for (std::size_t t = 0; t < m.e.size(); ++t) {
        long v = (t < ma.e.size() ? long(ma.e[t]) : 0) +
                 (t < mb.e.size() ? long(mb.e[t]) : 0);
        m.e[t] = std::uint16_t(v);
      }
      out.add_term(m, ca * cb);
    }
  }
  out.promote(std::max(nvars_, o.nvars_));
  return out;
}

SymPoly SymPoly::scaled(const CycScalar& c) const {
  SymPoly out;
  out.nvars_ = nvars_;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : t_) out.add_term(m, v * c);
  return out;
}

SymPoly SymPoly::galois(long a) const {
  SymPoly out;
  out.nvars_ = nvars_;
  for (const auto& [m, v] : t_) out.add_term(m, v.galois(a));
  return out;
}

bool SymPoly::equals(const SymPoly& o, int n) const {
  if (t_.empty() && o.t_.empty()) return true;
  long E = std::max(max_det_exp(), o.max_det_exp());
  if (E == 0) {
    SymPoly d = *this - o;
    return d.is_zero();
  }
  // Lift both to the common denominator det^E and compare polynomials.
  int N = 0;
  for (const auto& [m, c] : t_) { N = c.order(); break; }
  if (N == 0)
    for (const auto& [m, c] : o.terms()) { N = c.order(); break; }
  const SymPoly& det = det_poly(n, N == 0 ? 4 : N);
  auto lift = [&](const SymPoly& p) {
    SymPoly acc;
    for (const auto& [m, c] : p.terms()) {
      SMono base = m;
      base.det_e = 0;
      SymPoly term(p.nvars(), base, c);
      for (long t = m.det_e; t < E; ++t) term = term * det;
      acc += term;
    }
    return acc;
  };
  SymPoly d = lift(*this) - lift(o);
  return d.is_zero();
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("PolyMat: shape mismatch");
  PolyMat out(rows, o.cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < o.cols; ++c) {
      SymPoly acc;
      for (int k = 0; k < cols; ++k) acc += at(r, k) * o.at(k, c);
      out.at(r, c) = std::move(acc);
    }
  return out;
}

namespace {

// det and adjugate of the symmetric variable matrix, cached per (n, N).
struct DetAdj {
  SymPoly det;
  std::vector<SymPoly> adj;  // row-major n x n
};

const DetAdj& det_adj(int n, int N) {
  static std::map<std::pair<int, int>, DetAdj> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, N);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  DetAdj d;
  auto entry = [&](int i, int j) {
    return SymPoly::variable(i, j, n, CycScalar::from_rat(N, Rat(1)));
  };
  // Determinant by permutation expansion.
  {
    std::vector<int> perm(std::size_t(n), 0);
    for (int a = 0; a < n; ++a) perm[std::size_t(a)] = a;
    SymPoly det;
    do {
      int inv = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (perm[std::size_t(a)] > perm[std::size_t(b)]) ++inv;
      SymPoly prod(Rat(inv % 2 == 0 ? 1 : -1));
      for (int a = 0; a < n; ++a) prod = prod * entry(a + 1, perm[std::size_t(a)] + 1);
      det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    d.det = std::move(det);
  }
  // Adjugate via signed minors: adj(M)_{ij} = (-1)^{i+j} minor_{ji}; the
  // matrix is symmetric so adj is symmetric too.
  d.adj.resize(std::size_t(n) * std::size_t(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      std::vector<int> rows, cols;
      for (int a = 1; a <= n; ++a) {
        if (a != j) rows.push_back(a);
        if (a != i) cols.push_back(a);
      }
      SymPoly minor;
      if (rows.empty()) {
        minor = SymPoly(Rat(1));
      } else {
        std::vector<int> perm(rows.size(), 0);
        for (std::size_t a = 0; a < rows.size(); ++a) perm[a] = int(a);
        SymPoly acc;
        do {
          int inv = 0;
          for (std::size_t a = 0; a < perm.size(); ++a)
            for (std::size_t b = a + 1; b < perm.size(); ++b)
              if (perm[a] > perm[b]) ++inv;
          SymPoly prod(Rat(inv % 2 == 0 ? 1 : -1));
          for (std::size_t a = 0; a < rows.size(); ++a)
            prod = prod * entry(rows[a], cols[std::size_t(perm[a])]);
          acc += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        minor = std::move(acc);
      }
      SymPoly sign(Rat((i + j) % 2 == 0 ? 1 : -1));
      d.adj[std::size_t(i - 1) * std::size_t(n) + std::size_t(j - 1)] = sign * minor;
    }
  }
  return cache.emplace(key, std::move(d)).first->second;
}

}  // namespace

const SymPoly& det_poly(int n, int N) { return det_adj(n, N).det; }

const SymPoly& adjugate_entry(int i, int j, int n, int N) {
  return det_adj(n, N).adj[std::size_t(i - 1) * std::size_t(n) + std::size_t(j - 1)];
}

PolyMat variable_matrix(int n, int N) {
  PolyMat m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m.at(i - 1, j - 1) = SymPoly::variable(i, j, n, CycScalar::from_rat(N, Rat(1)));
  return m;
}

PolyMat inverse_variable_matrix(int n, int N) {
  PolyMat m(n, n);
  SymPoly dinv = SymPoly::det_inverse_pow(n, 1, CycScalar::from_rat(N, Rat(1)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m.at(i - 1, j - 1) = adjugate_entry(i, j, n, N) * dinv;
  return m;
}

SymPoly derive_direction(const SymPoly& p, int i, int j, int n, int N) {
  const int var = sym_index(i, j, n);
  const CycScalar pi1 = CycScalar::pi_pow_half(N, 2);
  SymPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (var < int(m.e.size()) && m.e[std::size_t(var)] > 0) {
      SMono mm = m;
      mm.e[std::size_t(var)] -= 1;
      out.add_term(mm, c * pi1 * Rat(long(m.e[std::size_t(var)])));
    }
    if (m.det_e > 0) {
      // d(det^-e) = -e det^-(e+1) * d(det); d(det)[eps_ij] = pi (2 - d_ij) adj_ij.
      SMono mm = m;
      mm.det_e += 1;
      SymPoly adj_part(p.nvars(), mm, c * pi1 * Rat(-(2 - (i == j ? 1 : 0)) * m.det_e));
      out += adj_part * adjugate_entry(i, j, n, N);
    }
  }
  return out;
}

namespace {

// All exponent vectors over `vars` variables with total degree d.
void monomials_of_degree(int vars, long d, std::vector<std::vector<std::uint16_t>>& out) {
  std::vector<std::uint16_t> cur(std::size_t(vars), 0);
  auto rec = [&](auto&& self, int at, long left) -> void {
    if (at == vars - 1) {
      cur[std::size_t(at)] = std::uint16_t(left);
      out.push_back(cur);
      return;
    }
    for (long take = 0; take <= left; ++take) {
      cur[std::size_t(at)] = std::uint16_t(take);
      self(self, at + 1, left - take);
    }
  };
  if (vars == 0) {
    if (d == 0) out.push_back({});
    return;
  }
  rec(rec, 0, d);
}

// Cached solver: expansions of degree-d monomials in the entries of M = S*S
// as S-polynomials, with a pivot-based rational solve.
struct SquareSolver {
  std::vector<std::vector<std::uint16_t>> m_monos;   // degree-d monomials in M vars
  std::map<std::vector<std::uint16_t>, Eigen::Index> s_index;  // S-monomial -> row
  RatMat expansion;  // rows: S-monomials of degree 2d, cols: m_monos
  std::vector<Eigen::Index> pivot_rows;
  RatMat pivot_inverse;
};

const SquareSolver& square_solver(int n, long d) {
  static std::map<std::pair<int, long>, SquareSolver> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int K = sym_count(n);
  SquareSolver sol;
  monomials_of_degree(K, d, sol.m_monos);

  // M_{ij} = sum_k S_{ik} S_{kj} as exponent-vector expansions over Q.
  std::vector<std::map<std::vector<std::uint16_t>, Rat>> entry_exp(static_cast<std::size_t>(K));
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      auto& dest = entry_exp[std::size_t(sym_index(i, j, n))];
      for (int k = 1; k <= n; ++k) {
        std::vector<std::uint16_t> mono(std::size_t(K), 0);
        mono[std::size_t(sym_index(i, k, n))] += 1;
        mono[std::size_t(sym_index(k, j, n))] += 1;
        dest[mono] += 1;
      }
    }
  }

  std::vector<std::map<std::vector<std::uint16_t>, Rat>> expanded;
  for (const auto& mm : sol.m_monos) {
    std::map<std::vector<std::uint16_t>, Rat> acc;
    acc[std::vector<std::uint16_t>(std::size_t(K), 0)] = 1;
    for (int v = 0; v < K; ++v) {
      for (int rep = 0; rep < int(mm[std::size_t(v)]); ++rep) {
        std::map<std::vector<std::uint16_t>, Rat> next;
        for (const auto& [ma, ca] : acc)
          for (const auto& [mb, cb] : entry_exp[std::size_t(v)]) {
            std::vector<std::uint16_t> m(static_cast<std::size_t>(K), 0);
            for (std::size_t t = 0; t < m.size(); ++t)
              m[t] = std::uint16_t(ma[t] + mb[t]);
            next[m] += ca * cb;
          }
        acc = std::move(next);
      }
    }
    for (const auto& [m, c] : acc)
      if (sol.s_index.find(m) == sol.s_index.end())
        sol.s_index.emplace(m, Eigen::Index(sol.s_index.size()));
    expanded.push_back(std::move(acc));
  }
  sol.expansion = rat_zero(Eigen::Index(sol.s_index.size()),
                           Eigen::Index(sol.m_monos.size()));
  for (std::size_t c = 0; c < expanded.size(); ++c)
    for (const auto& [m, v] : expanded[c])
      sol.expansion(sol.s_index.at(m), Eigen::Index(c)) = v;

  // Pivot solver for the (injective) expansion map.
  RatMat tr = sol.expansion.transpose();
  std::vector<Eigen::Index> piv = rref_in_place(tr);
  if (piv.size() != expanded.size())
    throw std::logic_error("square_solver: expansion map is not injective");
  sol.pivot_rows = piv;
  RatMat minor = rat_zero(Eigen::Index(expanded.size()), Eigen::Index(expanded.size()));
  for (std::size_t r = 0; r < expanded.size(); ++r)
    for (std::size_t c = 0; c < expanded.size(); ++c)
      minor(Eigen::Index(r), Eigen::Index(c)) =
          sol.expansion(piv[r], Eigen::Index(c));
  sol.pivot_inverse = inverse_of(minor);
  return cache.emplace(key, std::move(sol)).first->second;
}

}  // namespace

SymPoly square_root_to_square(const SymPoly& p, int n, int N) {
  if (p.is_zero()) return SymPoly();
  const int K = sym_count(n);

  // Clear the det(S)^(-1) symbol with an even power.
  long E = p.max_det_exp();
  if (E % 2 != 0) ++E;
  const SymPoly& detS = det_poly(n, N);
  SymPoly lifted;
  for (const auto& [m, c] : p.terms()) {
    SMono base = m;
    base.det_e = 0;
    SymPoly term(K, base, c);
    for (long t = m.det_e; t < E; ++t) term = term * detS;
    lifted += term;
  }

  // Split by total degree; even degrees 2d are matched against degree-d
  // monomials in the entries of M = S*S.
  std::map<long, std::map<std::vector<std::uint16_t>, CycScalar>> by_degree;
  for (const auto& [m, c] : lifted.terms()) {
    long deg = 0;
    for (auto x : m.e) deg += x;
    by_degree[deg][m.e] = c;
  }
  SymPoly result;
  for (const auto& [deg, comp] : by_degree) {
    if (deg % 2 != 0)
      throw std::domain_error("square_root_to_square: odd coefficient encountered");
    const SquareSolver& sol = square_solver(n, deg / 2);
    // Solve expansion * x = rhs via the pivot inverse, then verify.
    std::vector<CycScalar> rhs(std::size_t(sol.s_index.size()));
    for (const auto& [m, c] : comp) {
      auto it = sol.s_index.find(m);
      if (it == sol.s_index.end())
        throw std::domain_error("square_root_to_square: odd coefficient encountered");
      rhs[std::size_t(it->second)] = c;
    }
    std::vector<CycScalar> x(sol.m_monos.size());
    for (std::size_t r = 0; r < x.size(); ++r) {
      CycScalar acc;
      for (std::size_t s = 0; s < x.size(); ++s) {
        const Rat& w = sol.pivot_inverse(Eigen::Index(r), Eigen::Index(s));
        if (sp2n::is_zero(w)) continue;
        acc += rhs[std::size_t(sol.pivot_rows[s])] * w;
      }
      x[r] = std::move(acc);
    }
    // Consistency: the expansion of x must reproduce every rhs coordinate.
    for (const auto& [m, idx] : sol.s_index) {
      CycScalar acc;
      for (std::size_t c = 0; c < x.size(); ++c) {
        const Rat& w = sol.expansion(idx, Eigen::Index(c));
        if (!sp2n::is_zero(w)) acc += x[c] * w;
      }
      if (!(acc == rhs[std::size_t(idx)]))
        throw std::domain_error("square_root_to_square: odd coefficient encountered");
    }
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (x[c].is_zero()) continue;
      SMono m;
      m.e = sol.m_monos[c];
      m.det_e = E / 2;
      result.add_term(m, x[c]);
    }
  }
  return result;
}

SymPoly square_to_square_root(const SymPoly& p, int n, int N) {
  const int K = sym_count(n);
  SymPoly out;
  for (const auto& [m, c] : p.terms()) {
    SymPoly term(SymPoly(K, SMono{std::vector<std::uint16_t>(std::size_t(K), 0), 0},
                         c));
    for (int v = 0; v < K; ++v) {
      if (v >= int(m.e.size())) break;
      for (int rep = 0; rep < int(m.e[std::size_t(v)]); ++rep) {
        // Identify (i,j) from the flat index and expand M_ij = sum_k S_ik S_kj.
        int i = 1, j = 1;
        for (i = 1; i <= n; ++i) {
          int lo = sym_index(i, i, n), hi = sym_index(i, n, n);
          if (v >= lo && v <= hi) { j = i + (v - lo); break; }
        }
        SymPoly entry;
        for (int k = 1; k <= n; ++k) {
          SMono mm;
          mm.e.assign(std::size_t(K), 0);
          mm.e[std::size_t(sym_index(i, k, n))] += 1;
          mm.e[std::size_t(sym_index(k, j, n))] += 1;
          entry.add_term(mm, CycScalar::from_rat(N, Rat(1)));
        }
        term = term * entry;
      }
    }
    if (m.det_e > 0) {
      SMono dd;
      dd.e.assign(std::size_t(K), 0);
      dd.det_e = 2 * m.det_e;
      term = term * SymPoly(K, dd, CycScalar::from_rat(N, Rat(1)));
    }
    out += term;
  }
  return out;
}

bool in_inverse_entries_subring(const SymPoly& p, int n, int N) {
  if (p.is_zero()) return true;
  const int K = sym_count(n);
  // Group by homogeneity h = n*det_e - deg; a polynomial in the entries of
  // M^(-1) = adj(M)/det(M) is a sum of components of homogeneity -h with
  // candidate monomials W^beta, |beta| = h.
  std::map<long, SymPoly> by_h;
  for (const auto& [m, c] : p.terms()) {
    long deg = 0;
    for (auto x : m.e) deg += x;
    long h = long(n) * m.det_e - deg;
    if (h < 0) return false;
    by_h[h].add_term(m, c);
  }
  for (const auto& [h, comp] : by_h) {
    std::vector<std::vector<std::uint16_t>> candidates;
    monomials_of_degree(K, h, candidates);
    // Lift the component and all candidates to the common det power.
    long E = std::max(h, comp.max_det_exp());
    const SymPoly& det = det_poly(n, N);
    auto lift = [&](const SymPoly& q, long from) {
      SymPoly acc;
      for (const auto& [m, c] : q.terms()) {
        SMono base = m;
        base.det_e = 0;
        SymPoly term(K, base, c);
        long start = (from >= 0) ? from : m.det_e;
        for (long t = start; t < E; ++t) term = term * det;
        acc += term;
      }
      return acc;
    };
    SymPoly target = lift(comp, -1);
    std::vector<SymPoly> cand_expanded;
    std::map<SMono, Eigen::Index> rows;
    for (const auto& beta : candidates) {
      SymPoly w(Rat(1));
      for (int v = 0; v < K; ++v) {
        int i = 1, j = 1;
        for (i = 1; i <= n; ++i) {
          int lo = sym_index(i, i, n), hi = sym_index(i, n, n);
          if (v >= lo && v <= hi) { j = i + (v - lo); break; }
        }
        for (int rep = 0; rep < int(beta[std::size_t(v)]); ++rep)
          w = w * adjugate_entry(i, j, n, N);
      }
      w = lift(w, h);  // each candidate carries det^(-h) before lifting
      for (const auto& [m, c] : w.terms())
        if (rows.find(m) == rows.end()) rows.emplace(m, Eigen::Index(rows.size()));
      cand_expanded.push_back(std::move(w));
    }
    for (const auto& [m, c] : target.terms())
      if (rows.find(m) == rows.end()) rows.emplace(m, Eigen::Index(rows.size()));

    // Solve over the rational slot decomposition of the CycScalar coefficients.
    // Build the rational matrix of candidates and a joint solve per slot.
    RatMat A = rat_zero(Eigen::Index(rows.size()), Eigen::Index(cand_expanded.size()));
    for (std::size_t c = 0; c < cand_expanded.size(); ++c)
      for (const auto& [m, v] : cand_expanded[c].terms()) {
        if (!v.integral_pi()) throw std::logic_error("unexpected pi half power");
        // Candidates have rational coefficients by construction.
        Rat coeff = v.terms().begin()->second[0];
        A(rows.at(m), Eigen::Index(c)) = coeff;
      }
    // Collect the scalar slots present in the target.
    std::set<std::pair<long, std::size_t>> slots;
    for (const auto& [m, v] : target.terms())
      for (const auto& [hh, coords] : v.terms())
        for (std::size_t t = 0; t < coords.size(); ++t)
          if (!sp2n::is_zero(coords[t])) slots.insert({hh, t});
    for (const auto& slot : slots) {
      RatVec b = RatVec::Constant(Eigen::Index(rows.size()), Rat(0));
      for (const auto& [m, v] : target.terms()) {
        auto it = v.terms().find(slot.first);
        if (it == v.terms().end()) continue;
        if (slot.second < it->second.size())
          b(rows.at(m)) = it->second[slot.second];
      }
      try {
        (void)solve_linear(A, b);
      } catch (const std::domain_error&) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace sp2n
