#include "sp2n/rep_modules.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>

namespace sp2n {

long weyl_dimension(const Weight& k) {
  if (!k.is_dominant())
    throw std::invalid_argument("weyl_dimension: weight must be dominant");
  const int n = k.rank();
  Rat dim = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dim *= make_rat(k[i] - k[j] + j - i, j - i);
  if (dim.get_den() != 1)
    throw std::logic_error("weyl_dimension: non-integer value");
  return long(dim.get_num().get_si());
}

namespace {

// e_{ab} acting on the ambient tensor power (no determinant twist).
RatVec act_tensor_unit(int n, long d, int a, int b, const RatVec& v) {
  RatVec out = RatVec::Constant(v.size(), Rat(0));
  std::vector<long> stride(static_cast<std::size_t>(d), 0);
  for (long t = d - 1, s = 1; t >= 0; --t, s *= n) stride[std::size_t(t)] = s;
  for (Eigen::Index I = 0; I < v.size(); ++I) {
    if (sp2n::is_zero(v(I))) continue;
    for (long t = 0; t < d; ++t) {
      long digit = (long(I) / stride[std::size_t(t)]) % n;
      if (digit != b - 1) continue;
      long J = long(I) + (long(a - 1) - digit) * stride[std::size_t(t)];
      out(Eigen::Index(J)) += v(I);
    }
  }
  return out;
}

}  // namespace

RatMat GLIrrep::coords_in_basis(const RatVec& ambient_vec) const {
  RatMat c = rat_zero(dim, 1);
  for (int r = 0; r < dim; ++r) {
    Rat acc = 0;
    for (int s = 0; s < dim; ++s)
      acc += pivot_inverse_(r, s) * ambient_vec(pivot_rows_[std::size_t(s)]);
    c(r, 0) = acc;
  }
  return c;
}

RatMat GLIrrep::evaluate_iota(const UEAElement& X) const {
  RatMat total = rat_zero(dim, dim);
  for (const auto& [m, c] : X.terms()) {
    // iota(B(i1,j1)...B(im,jm)) = B(jm,im)...B(j1,i1): build the matrix
    // product by left-multiplying the transposed factors in word order.
    RatMat prod = rat_identity(dim);
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (it->kind != Gen::B)
        throw std::invalid_argument("evaluate_iota: monomial contains E generators");
      prod = action(it->j, it->i) * prod;
    }
    total += prod * c;
  }
  return total;
}

std::shared_ptr<const GLIrrep> build_irrep(const Weight& k) {
  static std::map<Weight, std::shared_ptr<const GLIrrep>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  if (!k.is_dominant())
    throw std::invalid_argument("build_irrep: weight must be dominant");

  const int n = k.rank();
  const long kn = k.k.back();
  long d = 0;
  for (long v : k.k) d += v - kn;

  auto rep = std::make_shared<GLIrrep>();
  rep->n = n;
  rep->highest_weight = k;
  rep->tensor_degree = d;
  rep->det_twist = kn;

  long amb = 1;
  for (long t = 0; t < d; ++t) amb *= n;

  // Highest weight tensor: product of column antisymmetrizers of the
  // partition (k_i - k_n).
  std::map<long, Rat> hw;
  hw[0] = 1;
  {
    std::vector<long> lambda;
    for (long v : k.k) lambda.push_back(v - kn);
    long lambda1 = lambda.empty() ? 0 : lambda[0];
    long placed = 0;
    for (long col = 1; col <= lambda1; ++col) {
      int h = 0;
      for (long v : lambda)
        if (v >= col) ++h;
      std::vector<int> perm(std::size_t(h), 0);
      for (int a = 0; a < h; ++a) perm[std::size_t(a)] = a;
      std::map<long, Rat> next;
      do {
        int inv = 0;
        for (int a = 0; a < h; ++a)
          for (int b = a + 1; b < h; ++b)
            if (perm[std::size_t(a)] > perm[std::size_t(b)]) ++inv;
        Rat sign = inv % 2 == 0 ? 1 : -1;
        long code = 0;
        for (int a = 0; a < h; ++a) code = code * n + perm[std::size_t(a)];
        for (const auto& [base, c] : hw) {
          long shifted = base;
          for (int a = 0; a < h; ++a) shifted *= n;
          next[shifted + code] += c * sign;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      hw = std::move(next);
      placed += h;
    }
    if (placed != d) throw std::logic_error("build_irrep: partition bookkeeping");
  }

  RatVec w0 = RatVec::Constant(amb, Rat(0));
  for (const auto& [idx, c] : hw) w0(Eigen::Index(idx)) = c;

  // Close under lowering operators over Q, tracking weights and words.
  std::vector<RatVec> vectors{w0};
  rep->weights.push_back(k);
  rep->lowering_words.emplace_back();
  RatMat echelon = rat_zero(0, amb);
  {
    RatMat first(1, amb);
    for (Eigen::Index c = 0; c < amb; ++c) first(0, c) = w0(c);
    echelon = first;
    rref_in_place(echelon);
  }
  auto try_insert = [&](const RatVec& u) {
    RatMat aug(echelon.rows() + 1, amb);
    aug.block(0, 0, echelon.rows(), amb) = echelon;
    for (Eigen::Index c = 0; c < amb; ++c) aug(echelon.rows(), c) = u(c);
    std::vector<Eigen::Index> piv = rref_in_place(aug);
    if (Eigen::Index(piv.size()) == echelon.rows()) return false;
    echelon = aug.topRows(Eigen::Index(piv.size()));
    return true;
  };

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t p = queue.front();
    queue.pop_front();
    for (int a = 2; a <= n; ++a) {
      for (int b = 1; b < a; ++b) {
        RatVec u = act_tensor_unit(n, d, a, b, vectors[p]);
        bool zero = true;
        for (Eigen::Index c = 0; c < amb && zero; ++c)
          if (!sp2n::is_zero(u(c))) zero = false;
        if (zero) continue;
        if (!try_insert(u)) continue;
        Weight wt = rep->weights[p];
        wt.k[std::size_t(a - 1)] += 1;
        wt.k[std::size_t(b - 1)] -= 1;
        std::vector<std::pair<int, int>> word{{a, b}};
        word.insert(word.end(), rep->lowering_words[p].begin(),
                    rep->lowering_words[p].end());
        vectors.push_back(u);
        rep->weights.push_back(std::move(wt));
        rep->lowering_words.push_back(std::move(word));
        queue.push_back(vectors.size() - 1);
      }
    }
  }

  rep->dim = int(vectors.size());
  if (long(rep->dim) != weyl_dimension(k))
    throw std::logic_error("build_irrep: dimension differs from the Weyl formula");
  rep->basis = rat_zero(amb, rep->dim);
  for (int bcol = 0; bcol < rep->dim; ++bcol) rep->basis.col(bcol) = vectors[std::size_t(bcol)];
  rep->hw_index = 0;

  // Pivot solver: dim ambient coordinates forming an invertible minor.
  {
    RatMat bt = rep->basis.transpose();
    std::vector<Eigen::Index> piv = rref_in_place(bt);
    rep->pivot_rows_ = piv;
    RatMat minor = rat_zero(rep->dim, rep->dim);
    for (int r = 0; r < rep->dim; ++r)
      for (int c = 0; c < rep->dim; ++c)
        minor(r, c) = rep->basis(piv[std::size_t(r)], c);
    rep->pivot_inverse_ = inverse_of(minor);
  }

  // Action matrices of B(i,j) = e_{ij} + k_n delta_{ij}.
  rep->action_.resize(std::size_t(n) * std::size_t(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      RatMat m = rat_zero(rep->dim, rep->dim);
      for (int bcol = 0; bcol < rep->dim; ++bcol) {
        RatVec img = act_tensor_unit(n, d, i, j, vectors[std::size_t(bcol)]);
        if (i == j && kn != 0) img += vectors[std::size_t(bcol)] * Rat(kn);
        m.col(bcol) = rep->coords_in_basis(img);
      }
      rep->action_[std::size_t(i - 1) * std::size_t(n) + std::size_t(j - 1)] =
          std::move(m);
    }
  }

  // Contravariant Gram on F_k: <f_a, f_b> = v0-coefficient of theta(word_a) f_b.
  rep->gram_ = rat_zero(rep->dim, rep->dim);
  for (int a = 0; a < rep->dim; ++a) {
    // theta(e_{w1} ... e_{wm}) = e_{wm}^t ... e_{w1}^t: left-multiply the
    // transposed factors in word order.
    RatMat op = rat_identity(rep->dim);
    const auto& word = rep->lowering_words[std::size_t(a)];
    for (auto it = word.begin(); it != word.end(); ++it)
      op = rep->action(it->second, it->first) * op;
    for (int b = 0; b < rep->dim; ++b)
      rep->gram_(a, b) = op(rep->hw_index, b);
  }

  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(k, std::move(rep));
  return it->second;
}

void VermaVector::add(const EMono& m, int b, const Rat& c) {
  if (sp2n::is_zero(c)) return;
  auto key = std::make_pair(m, b);
  auto it = coords.find(key);
  if (it == coords.end()) {
    coords.emplace(key, c);
  } else {
    it->second += c;
    if (sp2n::is_zero(it->second)) coords.erase(it);
  }
}

VermaVector& VermaVector::operator+=(const VermaVector& o) {
  if (!o.coords.empty()) {
    if (coords.empty() && !rep) { rep = o.rep; grade = o.grade; }
    if (grade != o.grade)
      throw std::invalid_argument("VermaVector: grade mismatch in addition");
    for (const auto& [key, c] : o.coords) add(key.first, key.second, c);
  }
  return *this;
}

VermaVector VermaVector::operator*(const Rat& c) const {
  VermaVector r;
  r.rep = rep;
  r.grade = grade;
  if (sp2n::is_zero(c)) return r;
  for (const auto& [key, v] : coords) r.coords.emplace(key, Rat(v * c));
  return r;
}

bool VermaVector::operator==(const VermaVector& o) const {
  return grade == o.grade && coords == o.coords;
}

VermaVector highest_weight_vector(const std::shared_ptr<const GLIrrep>& rep) {
  VermaVector v;
  v.rep = rep;
  v.grade = 0;
  v.add({}, rep->hw_index, 1);
  return v;
}

namespace {

EMono sorted_insert(EMono m, std::pair<int, int> p) {
  if (p.first > p.second) std::swap(p.first, p.second);
  m.insert(std::upper_bound(m.begin(), m.end(), p), p);
  return m;
}

}  // namespace

VermaVector act_gen(const Gen& g, const VermaVector& v) {
  VermaVector out;
  out.rep = v.rep;
  const GLIrrep& rep = *v.rep;
  const int n = rep.n;
  if (g.i < 1 || g.i > n || g.j < 1 || g.j > n)
    throw std::out_of_range("act_gen: generator index out of range");

  switch (g.kind) {
    case Gen::Eplus: {
      out.grade = v.grade + 1;
      for (const auto& [key, c] : v.coords)
        out.add(sorted_insert(key.first, {g.i, g.j}), key.second, c);
      return out;
    }
    case Gen::B: {
      out.grade = v.grade;
      for (const auto& [key, c] : v.coords) {
        const auto& [m, b] = key;
        // Derivation over the E+ factors: [B_ij, E+_kl] = d_jk E+_il + d_jl E+_ik.
        for (std::size_t t = 0; t < m.size(); ++t) {
          auto [kk, ll] = m[t];
          EMono rest = m;
          rest.erase(rest.begin() + std::ptrdiff_t(t));
          if (g.j == kk) out.add(sorted_insert(rest, {g.i, ll}), b, c);
          if (g.j == ll) out.add(sorted_insert(rest, {g.i, kk}), b, c);
        }
        // F_k slot.
        const RatMat& act = rep.action(g.i, g.j);
        for (int a = 0; a < rep.dim; ++a) {
          const Rat& w = act(a, b);
          if (!sp2n::is_zero(w)) out.add(m, a, Rat(c * w));
        }
      }
      return out;
    }
    default: {  // Eminus
      out.grade = v.grade - 1;
      for (const auto& [key, c] : v.coords) {
        const auto& [m, b] = key;
        for (std::size_t t = 0; t < m.size(); ++t) {
          auto [kk, ll] = m[t];
          // [E-_ij, E+_kl] = -(d_ki B_lj + d_lj B_ki + d_kj B_li + d_li B_kj)
          // acts on the suffix factors and the F_k slot; the prefix E+ part
          // multiplies back afterwards (p+ is abelian).
          EMono prefix(m.begin(), m.begin() + std::ptrdiff_t(t));
          EMono suffix(m.begin() + std::ptrdiff_t(t) + 1, m.end());
          VermaVector sub;
          sub.rep = v.rep;
          sub.grade = int(suffix.size());
          sub.add(suffix, b, c);
          auto push = [&](int p, int q) {
            VermaVector acted = act_gen(Gen::b(p, q), sub);
            for (const auto& [k2, c2] : acted.coords) {
              EMono merged = k2.first;
              for (const auto& pr : prefix) merged = sorted_insert(merged, pr);
              out.add(merged, k2.second, Rat(-c2));
            }
          };
          if (kk == g.i) push(ll, g.j);
          if (ll == g.j) push(kk, g.i);
          if (kk == g.j) push(ll, g.i);
          if (ll == g.i) push(kk, g.j);
        }
      }
      return out;
    }
  }
}

std::map<int, VermaVector> act_uea(const UEAElement& X, const VermaVector& v) {
  if (v.rep && X.rank() != v.rep->n && !X.is_zero())
    throw std::invalid_argument("act_uea: rank mismatch");
  std::map<int, VermaVector> out;
  for (const auto& [m, c] : X.terms()) {
    VermaVector cur = v;
    for (auto it = m.rbegin(); it != m.rend() && !cur.is_zero(); ++it)
      cur = act_gen(*it, cur);
    if (cur.is_zero()) continue;
    cur = cur * c;
    auto [slot, inserted] = out.emplace(cur.grade, cur);
    if (!inserted) slot->second += cur;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

Weight emono_weight(const EMono& m, const Weight& base) {
  Weight w = base;
  for (const auto& [i, j] : m) {
    w.k[std::size_t(i - 1)] += 1;
    w.k[std::size_t(j - 1)] += 1;
  }
  return w;
}

std::vector<EMono> grade_monomials(int n, int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) pairs.push_back({i, j});
  std::vector<EMono> out;
  EMono cur;
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t p = from; p < pairs.size(); ++p) {
      cur.push_back(pairs[p]);
      self(self, p, left - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, m);
  return out;
}

std::vector<VermaVector> ktype_hwvs(const Weight& k, int m, const Weight& mu) {
  if (m < 0) throw std::invalid_argument("ktype_hwvs: negative grade");
  auto rep = build_irrep(k);
  const int n = rep->n;

  // Basis of the weight-mu slice of grade m.
  std::vector<std::pair<EMono, int>> slice;
  for (const EMono& mono : grade_monomials(n, m)) {
    Weight base = emono_weight(mono, Weight(std::vector<long>(std::size_t(n), 0)));
    for (int b = 0; b < rep->dim; ++b) {
      Weight total = base;
      for (int a = 0; a < n; ++a) total.k[std::size_t(a)] += rep->weights[std::size_t(b)][a];
      if (total == mu) slice.push_back({mono, b});
    }
  }
  if (slice.empty()) return {};

  // Stack the raising maps B(i,j), i<j; kernel = highest weight vectors.
  std::vector<std::map<std::pair<EMono, int>, Eigen::Index>> target_pos;
  std::vector<RatMat> blocks;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::map<std::pair<EMono, int>, Eigen::Index> tp;
      std::vector<std::map<std::pair<EMono, int>, Rat>> cols(slice.size());
      for (std::size_t s = 0; s < slice.size(); ++s) {
        VermaVector v;
        v.rep = rep;
        v.grade = m;
        v.add(slice[s].first, slice[s].second, 1);
        VermaVector img = act_gen(Gen::b(i, j), v);
        for (const auto& [key, c] : img.coords) {
          if (tp.find(key) == tp.end()) tp.emplace(key, Eigen::Index(tp.size()));
          cols[s][key] = c;
        }
      }
      RatMat block = rat_zero(Eigen::Index(tp.size()), Eigen::Index(slice.size()));
      for (std::size_t s = 0; s < slice.size(); ++s)
        for (const auto& [key, c] : cols[s]) block(tp.at(key), Eigen::Index(s)) = c;
      blocks.push_back(std::move(block));
      target_pos.push_back(std::move(tp));
    }
  }
  Eigen::Index rows = 0;
  for (const RatMat& b : blocks) rows += b.rows();
  RatMat stacked = rat_zero(rows, Eigen::Index(slice.size()));
  Eigen::Index at = 0;
  for (const RatMat& b : blocks) {
    stacked.block(at, 0, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  RatMat ker = kernel_basis(stacked);

  std::vector<VermaVector> out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    VermaVector v;
    v.rep = rep;
    v.grade = m;
    for (std::size_t s = 0; s < slice.size(); ++s)
      v.add(slice[s].first, slice[s].second, ker(Eigen::Index(s), c));
    out.push_back(std::move(v));
  }
  return out;
}

bool ktype_bound_check(const Weight& kprime, int m_max) {
  auto rep = build_irrep(kprime);
  const int n = rep->n;
  for (int m = 0; m <= m_max; ++m) {
    std::set<Weight> seen;
    for (const EMono& mono : grade_monomials(n, m)) {
      Weight base = emono_weight(mono, Weight(std::vector<long>(std::size_t(n), 0)));
      for (int b = 0; b < rep->dim; ++b) {
        Weight total = base;
        for (int a = 0; a < n; ++a)
          total.k[std::size_t(a)] += rep->weights[std::size_t(b)][a];
        if (total.is_dominant()) seen.insert(total);
      }
    }
    for (const Weight& mu : seen) {
      if (ktype_hwvs(kprime, m, mu).empty()) continue;
      for (int a = 0; a < n; ++a)
        if (mu[a] < kprime[a]) return false;
    }
  }
  return true;
}

Rat contravariant_form(const VermaVector& u, const VermaVector& v) {
  if (u.is_zero() || v.is_zero()) return 0;
  if (u.grade != v.grade)
    throw std::invalid_argument("contravariant_form: grade mismatch");
  const GLIrrep& rep = *u.rep;
  Rat total = 0;
  for (const auto& [key, c] : u.coords) {
    const auto& [m, a] = key;
    // <M (x) f_a, v> = <1 (x) f_a, theta(M) v>; theta(M) is the matching
    // E- monomial and the E- factors commute.
    VermaVector w = v;
    for (const auto& [i, j] : m) w = act_gen(Gen::eminus(i, j), w);
    for (const auto& [k2, c2] : w.coords) {
      if (!k2.first.empty())
        throw std::logic_error("contravariant_form: expected grade-0 residue");
      total += c * c2 * rep.gram()(a, k2.second);
    }
  }
  return total;
}

Rat lrho_project(const GLIrrep& rep, const RatVec& coords) {
  return coords(rep.hw_index);
}

LadderResult scalar_ladder(const Weight& k) {
  if (!k.is_dominant())
    throw std::invalid_argument("scalar_ladder: weight must be dominant");
  const int n = k.rank();
  for (int a = 1; a < n; ++a)
    if (((k[a] - k[0]) % 2 + 2) % 2 != 0)
      throw std::invalid_argument("scalar_ladder: entries must share parity");
  if (k.k.back() <= n)
    throw std::invalid_argument("scalar_ladder: requires k_n > n");

  long sum = 0;
  for (long v : k.k) sum += v;
  const long m_long = (long(n) * k[0] - sum) / 2;
  const int m = int(m_long);

  Weight target(std::vector<long>(std::size_t(n), k[0]));
  std::vector<VermaVector> hw = ktype_hwvs(k, m, target);
  if (hw.empty())
    throw std::domain_error("scalar_ladder: no scalar K-type at grade " +
                            std::to_string(m));

  auto rep = build_irrep(k);
  // Radical avoidance: the chosen vector must pair non-trivially against the
  // full weight slice of its grade.
  std::vector<std::pair<EMono, int>> slice;
  for (const EMono& mono : grade_monomials(n, m)) {
    Weight base = emono_weight(mono, Weight(std::vector<long>(std::size_t(n), 0)));
    for (int b = 0; b < rep->dim; ++b) {
      Weight total = base;
      for (int a = 0; a < n; ++a) total.k[std::size_t(a)] += rep->weights[std::size_t(b)][a];
      if (total == target) slice.push_back({mono, b});
    }
  }
  const VermaVector* chosen = nullptr;
  for (const VermaVector& w : hw) {
    for (const auto& sb : slice) {
      VermaVector probe;
      probe.rep = rep;
      probe.grade = m;
      probe.add(sb.first, sb.second, 1);
      if (!sp2n::is_zero(contravariant_form(w, probe))) {
        chosen = &w;
        break;
      }
    }
    if (chosen) break;
  }
  if (!chosen)
    throw std::domain_error(
        "scalar_ladder: every highest weight solution lies in the radical");

  // Express the chosen vector through U(p+) U(k_Q) applied to v_k.
  UEAElement Y(n);
  for (const auto& [key, c] : chosen->coords) {
    const auto& [mono, b] = key;
    Monomial word;
    for (const auto& [i, j] : mono) word.push_back(Gen::eplus(i, j));
    for (const auto& [p, q] : rep->lowering_words[std::size_t(b)])
      word.push_back(Gen::b(p, q));
    Y.add_term(word, c);
  }
  // Normalize on the lexicographically least monomial.
  const Rat lead = Y.terms().begin()->second;
  Y = Y * Rat(1 / lead);

  LadderResult res;
  res.Y = std::move(Y);
  res.grade = m;
  res.solution_dim = int(hw.size());
  return res;
}

}  // namespace sp2n
