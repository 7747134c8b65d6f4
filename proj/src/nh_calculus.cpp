#include "sp2n/nh_calculus.hpp"

#include "sp2n/center_gens.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sp2n {

namespace {

int pow_int(int b, int e) {
  int r = 1;
  for (int t = 0; t < e; ++t) r *= b;
  return r;
}

}  // namespace

int FourierExpansion::base_dim() const {
  return build_irrep(rep_weight)->dim;
}

int FourierExpansion::value_dim() const {
  return base_dim() * pow_int(sym_count(n), int(slots.size()));
}

void FourierExpansion::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    bool zero = true;
    for (const SymPoly& p : it->second)
      if (!p.is_zero()) { zero = false; break; }
    it = zero ? terms.erase(it) : std::next(it);
  }
}

FourierExpansion make_expansion(int n, int N, long denom, const Weight& rep_weight) {
  if (n < 1) throw std::invalid_argument("make_expansion: rank must be positive");
  if (N < 4 || N % 4 != 0)
    throw std::invalid_argument("make_expansion: cyclotomic order must be divisible by 4");
  if (denom < 1) throw std::invalid_argument("make_expansion: denominator must be >= 1");
  if (rep_weight.rank() != n)
    throw std::invalid_argument("make_expansion: weight rank mismatch");
  FourierExpansion f;
  f.n = n;
  f.N = N;
  f.denom = denom;
  f.rep_weight = rep_weight;
  return f;
}

int slot_stride(const FourierExpansion& f) {
  return f.value_dim() / sym_count(f.n);
}

namespace {

void check_compatible(const FourierExpansion& a, const FourierExpansion& b) {
  if (a.n != b.n || a.N != b.N || a.denom != b.denom ||
      a.rep_weight != b.rep_weight || a.slots != b.slots)
    throw std::invalid_argument("expansions have incompatible headers");
}

}  // namespace

FourierExpansion expansion_add(const FourierExpansion& a, const FourierExpansion& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  check_compatible(a, b);
  FourierExpansion out = a;
  for (const auto& [h, val] : b.terms) {
    auto it = out.terms.find(h);
    if (it == out.terms.end()) {
      out.terms.emplace(h, val);
    } else {
      for (std::size_t v = 0; v < val.size(); ++v) it->second[v] += val[v];
    }
  }
  out.prune();
  return out;
}

FourierExpansion expansion_scale(const FourierExpansion& a, const CycScalar& c) {
  FourierExpansion out = a;
  for (auto& [h, val] : out.terms)
    for (SymPoly& p : val) p = p.scaled(c);
  out.prune();
  return out;
}

bool expansion_equal(const FourierExpansion& a, const FourierExpansion& b) {
  if (a.n != b.n || a.N != b.N || a.denom != b.denom ||
      a.rep_weight != b.rep_weight || a.slots != b.slots)
    return false;
  const SymPoly zero;
  auto keys = a.terms;
  for (const auto& [h, val] : b.terms)
    if (keys.find(h) == keys.end()) keys.emplace(h, std::vector<SymPoly>());
  for (const auto& [h, unused] : keys) {
    auto ia = a.terms.find(h);
    auto ib = b.terms.find(h);
    const int dim = a.value_dim();
    for (int v = 0; v < dim; ++v) {
      const SymPoly& pa = (ia != a.terms.end()) ? ia->second[std::size_t(v)] : zero;
      const SymPoly& pb = (ib != b.terms.end()) ? ib->second[std::size_t(v)] : zero;
      if (!pa.equals(pb, a.n)) return false;
    }
  }
  return true;
}

// --- even-form (Y) conversion -------------------------------------------
//
// Public expansions store coefficients in the S variables. The differential
// calculus runs on the even subring, with coefficients rewritten as
// polynomials in the entries of M = S*S = (pi y) and det(M)^(-1).

namespace {

FourierExpansion to_even(const FourierExpansion& f) {
  FourierExpansion out = f;
  for (auto& [h, val] : out.terms)
    for (SymPoly& p : val) p = square_root_to_square(p, f.n, f.N);
  return out;
}

FourierExpansion from_even(const FourierExpansion& f) {
  FourierExpansion out = f;
  for (auto& [h, val] : out.terms)
    for (SymPoly& p : val) p = square_to_square_root(p, f.n, f.N);
  out.prune();
  return out;
}

// tr(h eps_ij) for the term key: (2 - delta_ij) h_ij as a rational.
Rat h_pairing(const FourierExpansion& f, const std::vector<long>& hkey, int i, int j) {
  long raw = hkey[std::size_t(sym_index(i, j, f.n))];
  long mult = (i == j) ? 1 : 2;
  return make_rat(mult * raw, f.denom);
}

// Termwise derivative, even form in and out. dbar flips the sign rule and
// drops the exponential part.
FourierExpansion derivative_even(const FourierExpansion& f, bool dbar) {
  const int K = sym_count(f.n);
  const int dv = f.value_dim();
  FourierExpansion out = f;
  out.slots.insert(out.slots.begin(), dbar ? SlotKind::Sigma : SlotKind::Tau);
  out.terms.clear();
  const CycScalar two_pi_i =
      CycScalar::pi_pow_half(f.N, 2, Rat(2)) * CycScalar::i_unit(f.N);
  const CycScalar half_i =
      CycScalar::i_unit(f.N) * make_rat(dbar ? 1 : -1, 2);
  for (const auto& [h, val] : f.terms) {
    std::vector<SymPoly> nv(static_cast<std::size_t>(K) * static_cast<std::size_t>(dv));
    for (int i = 1; i <= f.n; ++i) {
      for (int j = i; j <= f.n; ++j) {
        const int slot = sym_index(i, j, f.n);
        for (int w = 0; w < dv; ++w) {
          SymPoly comp;
          if (!dbar) {
            Rat pair = h_pairing(f, h, i, j);
            if (!sp2n::is_zero(pair))
              comp += val[std::size_t(w)].scaled(two_pi_i * pair);
          }
          comp += derive_direction(val[std::size_t(w)], i, j, f.n, f.N).scaled(half_i);
          nv[std::size_t(slot) * std::size_t(dv) + std::size_t(w)] = std::move(comp);
        }
      }
    }
    out.terms.emplace(h, std::move(nv));
  }
  out.prune();
  return out;
}

// Replaces the leading slot coordinates through a K x K coefficient matrix:
// out[(kl), rest] = sum_(ij) T[(kl)][(ij)] in[(ij), rest].
FourierExpansion substitute_slot0(const FourierExpansion& f,
                                  const std::vector<SymPoly>& T) {
  const int K = sym_count(f.n);
  const int rest = slot_stride(f);
  FourierExpansion out = f;
  for (auto& [h, val] : out.terms) {
    std::vector<SymPoly> nv(val.size());
    for (int kl = 0; kl < K; ++kl)
      for (int r = 0; r < rest; ++r) {
        SymPoly acc;
        for (int ij = 0; ij < K; ++ij) {
          const SymPoly& t = T[std::size_t(kl) * std::size_t(K) + std::size_t(ij)];
          if (t.is_zero()) continue;
          acc += t * val[std::size_t(ij) * std::size_t(rest) + std::size_t(r)];
        }
        nv[std::size_t(kl) * std::size_t(rest) + std::size_t(r)] = std::move(acc);
      }
    val = std::move(nv);
  }
  out.prune();
  return out;
}

// Coefficient matrix of u -> A u A on upper-triangle coordinates (A symmetric).
std::vector<SymPoly> conjugation_matrix(const PolyMat& A, int n) {
  const int K = sym_count(n);
  std::vector<SymPoly> T(std::size_t(K) * std::size_t(K));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      int row = sym_index(i, j, n);
      for (int k = 1; k <= n; ++k)
        for (int l = k; l <= n; ++l) {
          int col = sym_index(k, l, n);
          // coefficient of u_kl in (A u A)_ij
          SymPoly c = A.at(i - 1, k - 1) * A.at(l - 1, j - 1);
          if (k != l) c += A.at(i - 1, l - 1) * A.at(k - 1, j - 1);
          T[std::size_t(row) * std::size_t(K) + std::size_t(col)] += c;
        }
    }
  return T;
}

// Multiplies the value tensor by rho(A) on the base factor and transforms
// every slot (tau via A, sigma via Ainv).
FourierExpansion twist_even(const FourierExpansion& f, const PolyMat& A,
                            const PolyMat& Ainv, const SymPoly& detA_inv) {
  auto rep = build_irrep(f.rep_weight);
  const int K = sym_count(f.n);
  const int dim = rep->dim;

  std::vector<SymPoly> A_flat(std::size_t(f.n) * std::size_t(f.n));
  for (int r = 0; r < f.n; ++r)
    for (int c = 0; c < f.n; ++c) A_flat[std::size_t(r) * std::size_t(f.n) + std::size_t(c)] = A.at(r, c);
  std::vector<SymPoly> base = rep->evaluate_group<SymPoly>(A_flat, detA_inv);

  std::vector<SymPoly> Ttau = conjugation_matrix(A, f.n);
  std::vector<SymPoly> Tsigma = conjugation_matrix(Ainv, f.n);

  FourierExpansion out = f;
  const int e = int(f.slots.size());
  for (auto& [h, val] : out.terms) {
    // Base factor.
    {
      std::vector<SymPoly> nv(val.size());
      const int blocks = int(val.size()) / dim;
      for (int blk = 0; blk < blocks; ++blk)
        for (int r = 0; r < dim; ++r) {
          SymPoly acc;
          for (int c = 0; c < dim; ++c) {
            const SymPoly& m = base[std::size_t(r) * std::size_t(dim) + std::size_t(c)];
            if (m.is_zero()) continue;
            acc += m * val[std::size_t(blk) * std::size_t(dim) + std::size_t(c)];
          }
          nv[std::size_t(blk) * std::size_t(dim) + std::size_t(r)] = std::move(acc);
        }
      val = std::move(nv);
    }
    // Slot factors, innermost stride = dim * K^(slots below).
    for (int t = e - 1; t >= 0; --t) {
      const std::vector<SymPoly>& T =
          (f.slots[std::size_t(t)] == SlotKind::Tau) ? Ttau : Tsigma;
      int below = dim;
      for (int u = t + 1; u < e; ++u) below *= K;
      int above = int(val.size()) / (below * K);
      std::vector<SymPoly> nv(val.size());
      for (int a = 0; a < above; ++a)
        for (int r = 0; r < K; ++r)
          for (int b = 0; b < below; ++b) {
            SymPoly acc;
            for (int c = 0; c < K; ++c) {
              const SymPoly& m = T[std::size_t(r) * std::size_t(K) + std::size_t(c)];
              if (m.is_zero()) continue;
              acc += m * val[(std::size_t(a) * std::size_t(K) + std::size_t(c)) *
                                 std::size_t(below) +
                             std::size_t(b)];
            }
            nv[(std::size_t(a) * std::size_t(K) + std::size_t(r)) * std::size_t(below) +
               std::size_t(b)] = std::move(acc);
          }
      val = std::move(nv);
    }
  }
  out.prune();
  return out;
}

struct FrameMatrices {
  PolyMat two_y;       // 2 pi^(-1) M
  PolyMat two_y_inv;   // (pi/2) adj(M) det(M)^(-1)
  SymPoly det_inv_2y;      // det(2y)^(-1)
  SymPoly det_inv_2y_inv;  // det((2y)^(-1))^(-1) = det(2y)
};

FrameMatrices frame_matrices(int n, int N) {
  FrameMatrices fm;
  fm.two_y = PolyMat(n, n);
  fm.two_y_inv = PolyMat(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      fm.two_y.at(i - 1, j - 1) =
          SymPoly::variable(i, j, n, CycScalar::pi_pow_half(N, -2, Rat(2)));
      fm.two_y_inv.at(i - 1, j - 1) =
          adjugate_entry(i, j, n, N) *
          SymPoly::det_inverse_pow(n, 1, CycScalar::pi_pow_half(N, 2, make_rat(1, 2)));
    }
  long twon = 1;
  for (int t = 0; t < n; ++t) twon *= 2;
  fm.det_inv_2y =
      SymPoly::det_inverse_pow(n, 1, CycScalar::pi_pow_half(N, 2 * n, make_rat(1, twon)));
  fm.det_inv_2y_inv =
      det_poly(n, N).scaled(CycScalar::pi_pow_half(N, -2 * n, Rat(twon)));
  return fm;
}

// C and E on even-form expansions: derivative, then feed y u y into the new
// slot; y u y = pi^(-2) M u M keeps everything even.
FourierExpansion c_or_e_even(const FourierExpansion& f, bool e_op) {
  FourierExpansion d = derivative_even(f, e_op);
  PolyMat M(f.n, f.n);
  for (int i = 1; i <= f.n; ++i)
    for (int j = 1; j <= f.n; ++j)
      M.at(i - 1, j - 1) =
          SymPoly::variable(i, j, f.n, CycScalar::from_rat(f.N, Rat(1)));
  std::vector<SymPoly> T = conjugation_matrix(M, f.n);
  for (SymPoly& p : T) p = p.scaled(CycScalar::pi_pow_half(f.N, -4, Rat(4)));
  return substitute_slot0(d, T);
}

// One Maass raising step D_rho on an even-form expansion, rho taken from the
// expansion's own type.
FourierExpansion d_rho_step_even(const FourierExpansion& f, const FrameMatrices& fm) {
  FourierExpansion t1 = twist_even(f, fm.two_y, fm.two_y_inv, fm.det_inv_2y);
  FourierExpansion t2 = c_or_e_even(t1, false);
  return twist_even(t2, fm.two_y_inv, fm.two_y, fm.det_inv_2y_inv);
}

}  // namespace

bool has_even_coefficients(const FourierExpansion& f) {
  try {
    (void)to_even(f);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

bool is_nearly_holomorphic(const FourierExpansion& f) {
  FourierExpansion even;
  try {
    even = to_even(f);
  } catch (const std::domain_error&) {
    return false;
  }
  for (const auto& [h, val] : even.terms)
    for (const SymPoly& p : val)
      if (!in_inverse_entries_subring(p, f.n, f.N)) return false;
  return true;
}

long nearly_holomorphic_degree(const FourierExpansion& f) {
  FourierExpansion even = to_even(f);
  long deg = 0;
  for (const auto& [h, val] : even.terms)
    for (const SymPoly& p : val)
      for (const auto& [m, c] : p.terms()) {
        long d = 0;
        for (auto x : m.e) d += x;
        // Each monomial M^alpha det^- e is a y^(-1)-polynomial of degree
        // n e - deg alpha when it lies in the inverse-entry subring.
        deg = std::max(deg, long(f.n) * m.det_e - d);
      }
  return deg;
}

FourierExpansion op_D(const FourierExpansion& f) {
  return from_even(derivative_even(to_even(f), false));
}

FourierExpansion op_Dbar(const FourierExpansion& f) {
  return from_even(derivative_even(to_even(f), true));
}

FourierExpansion op_C(const FourierExpansion& f) {
  return from_even(c_or_e_even(to_even(f), false));
}

FourierExpansion op_E(const FourierExpansion& f) {
  return from_even(c_or_e_even(to_even(f), true));
}

FourierExpansion op_E_pow(const FourierExpansion& f, int p) {
  FourierExpansion cur = to_even(f);
  for (int t = 0; t < p; ++t) cur = c_or_e_even(cur, true);
  return from_even(cur);
}

FourierExpansion op_Drho_e(const FourierExpansion& f, int e) {
  FrameMatrices fm = frame_matrices(f.n, f.N);
  FourierExpansion cur = to_even(f);
  for (int t = 0; t < e; ++t) cur = d_rho_step_even(cur, fm);
  return from_even(cur);
}

FourierExpansion galois_act(long a, const FourierExpansion& f) {
  long g = std::gcd(((a % f.N) + f.N) % f.N, long(f.N));
  if (g != 1) throw std::invalid_argument("galois_act: a must be a unit mod N");
  FourierExpansion out = f;
  for (auto& [h, val] : out.terms)
    for (SymPoly& p : val) p = p.galois(a);
  out.prune();
  return out;
}

FourierExpansion apply_lie_element(const UEAElement& R, const FourierExpansion& f,
                                   const Weight& rho1w, const Weight& rho2w) {
  const int n = f.n;
  const int N = f.N;
  if (!f.slots.empty())
    throw std::invalid_argument("apply_lie_element: expansion must be slot-free");
  if (f.rep_weight != rho1w)
    throw std::invalid_argument("apply_lie_element: expansion type differs from rho1");
  if (!R.is_zero() && R.rank() != n)
    throw std::invalid_argument("apply_lie_element: rank mismatch");
  auto rho1 = build_irrep(rho1w);
  auto rho2 = build_irrep(rho2w);
  if (rho2->dim != rho1->dim && rho2->dim != 1)
    throw std::invalid_argument("apply_lie_element: dimension mismatch");
  const bool scalar_rho2 = (rho2->dim == 1 && rho1->dim != 1);

  FourierExpansion even = to_even(f);

  // Group the block-form monomials by their E-content; the k-parts collapse
  // into one rational matrix per group through rho1(iota(X)).
  using EList = std::vector<std::pair<int, int>>;
  std::map<std::pair<EList, EList>, RatMat> groups;
  for (const auto& [m, c] : R.terms()) {
    EList eplus, eminus;
    Monomial bpart;
    int phase = 0;  // 0: E+, 1: E-, 2: B
    for (const Gen& g : m) {
      int want = (g.kind == Gen::Eplus) ? 0 : (g.kind == Gen::Eminus ? 1 : 2);
      if (want < phase)
        throw std::invalid_argument("apply_lie_element: R is not in block form");
      phase = want;
      if (g.kind == Gen::Eplus) eplus.push_back({g.i, g.j});
      else if (g.kind == Gen::Eminus) eminus.push_back({g.i, g.j});
      else bpart.push_back(g);
    }
    UEAElement x(n);
    x.add_term(bpart, 1);
    RatMat A = rho1->evaluate_iota(x) * c;
    auto key = std::make_pair(std::move(eplus), std::move(eminus));
    auto it = groups.find(key);
    if (it == groups.end()) groups.emplace(std::move(key), std::move(A));
    else it->second += A;
  }

  // Raising/lowering kernels depend only on the E-counts; conjugation by the
  // constant matrix rho1(iota(X)) cancels against the frame twist, so the
  // chain runs with plain rho1 twists and the matrix acts at the end.
  FrameMatrices fm = frame_matrices(n, N);
  std::map<std::pair<int, int>, FourierExpansion> kernels;
  auto kernel = [&](int s, int t) -> const FourierExpansion& {
    auto key = std::make_pair(s, t);
    auto it = kernels.find(key);
    if (it != kernels.end()) return it->second;
    FourierExpansion g = even;
    for (int b = 0; b < t; ++b) g = c_or_e_even(g, true);
    for (int a = 0; a < s; ++a) g = d_rho_step_even(g, fm);
    // (pi i)^(t-s), then back to S variables for the slot evaluation.
    g = expansion_scale(g, CycScalar::pi_pow_half(N, 2 * (t - s)) *
                               CycScalar::i_pow(N, t - s));
    g = from_even(g);
    return kernels.emplace(key, std::move(g)).first->second;
  };

  // Frame twist pieces in the S variables.
  PolyMat Smat = variable_matrix(n, N);
  PolyMat Sinv = inverse_variable_matrix(n, N);
  std::vector<SymPoly> S_flat(std::size_t(n) * std::size_t(n)),
      Sinv_flat(std::size_t(n) * std::size_t(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      S_flat[std::size_t(r) * std::size_t(n) + std::size_t(c)] = Smat.at(r, c);
      Sinv_flat[std::size_t(r) * std::size_t(n) + std::size_t(c)] = Sinv.at(r, c);
    }
  std::vector<SymPoly> rho1_at_S = rho1->evaluate_group<SymPoly>(
      S_flat, SymPoly::det_inverse_pow(n, 1, CycScalar::from_rat(N, Rat(1))));
  std::vector<SymPoly> rho2_at_Sinv;
  if (!scalar_rho2)
    rho2_at_Sinv = rho2->evaluate_group<SymPoly>(Sinv_flat, det_poly(n, N));

  const long k1 = rho1->homogeneous_degree();
  const long k2 = rho2->homogeneous_degree();
  const CycScalar pi_shift = CycScalar::pi_pow_half(N, k2 - k1);

  FourierExpansion result = make_expansion(n, N, f.denom, rho1w);
  const int dim = rho1->dim;
  const int K = sym_count(n);

  for (const auto& [key, A] : groups) {
    const auto& [eplus, eminus] = key;
    const int s = int(eplus.size());
    const int t = int(eminus.size());
    const FourierExpansion& ker = kernel(s, t);

    // Slot arguments: -2 S Sigma_ab S for E+, -2 S^(-1) Sigma_pq S^(-1) for E-.
    std::vector<std::vector<SymPoly>> args;
    auto sandwich = [&](const PolyMat& F, int a, int b) {
      std::vector<SymPoly> entries(static_cast<std::size_t>(K));
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          SymPoly v = F.at(i - 1, a - 1) * F.at(b - 1, j - 1) +
                      F.at(i - 1, b - 1) * F.at(a - 1, j - 1);
          entries[std::size_t(sym_index(i, j, n))] = v.scaled(CycScalar::from_rat(N, Rat(-2)));
        }
      return entries;
    };
    for (const auto& [a, b] : eplus) args.push_back(sandwich(Smat, a, b));
    for (const auto& [p, q] : eminus) args.push_back(sandwich(Sinv, p, q));

    // P = rho2(S^-1) A rho1(S), or the scalar determinant twist times A rho1(S).
    std::vector<SymPoly> P(std::size_t(dim) * std::size_t(dim));
    {
      std::vector<SymPoly> AR(std::size_t(dim) * std::size_t(dim));
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
          SymPoly acc;
          for (int k = 0; k < dim; ++k) {
            const Rat& w = A(r, k);
            if (sp2n::is_zero(w)) continue;
            acc += rho1_at_S[std::size_t(k) * std::size_t(dim) + std::size_t(c)]
                       .scaled(CycScalar::from_rat(N, w));
          }
          AR[std::size_t(r) * std::size_t(dim) + std::size_t(c)] = std::move(acc);
        }
      if (scalar_rho2) {
        long m2 = rho2w[0];
        SymPoly twist2 =
            m2 >= 0
                ? SymPoly::det_inverse_pow(n, m2, CycScalar::from_rat(N, Rat(1)))
                : [&] {
                    SymPoly p(Rat(1));
                    for (long u = 0; u < -m2; ++u) p = p * det_poly(n, N);
                    return p;
                  }();
        for (std::size_t v = 0; v < AR.size(); ++v) P[v] = twist2 * AR[v];
      } else {
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c) {
            SymPoly acc;
            for (int k = 0; k < dim; ++k) {
              const SymPoly& m = rho2_at_Sinv[std::size_t(r) * std::size_t(dim) + std::size_t(k)];
              if (m.is_zero()) continue;
              acc += m * AR[std::size_t(k) * std::size_t(dim) + std::size_t(c)];
            }
            P[std::size_t(r) * std::size_t(dim) + std::size_t(c)] = std::move(acc);
          }
      }
    }

    // Evaluate the kernel slots and apply the frame twist, termwise in h.
    const int e = s + t;
    for (const auto& [h, val] : ker.terms) {
      // Contract the slot indices against the argument entries.
      std::vector<SymPoly> contracted(static_cast<std::size_t>(dim));
      std::vector<int> idx(std::size_t(e), 0);
      for (;;) {
        SymPoly prod(Rat(1));
        for (int u = 0; u < e; ++u)
          prod = prod * args[std::size_t(u)][std::size_t(idx[std::size_t(u)])];
        long flat = 0;
        for (int u = 0; u < e; ++u) flat = flat * K + idx[std::size_t(u)];
        for (int b = 0; b < dim; ++b) {
          const SymPoly& kv = val[std::size_t(flat) * std::size_t(dim) + std::size_t(b)];
          if (!kv.is_zero()) contracted[std::size_t(b)] += prod * kv;
        }
        int u = e - 1;
        while (u >= 0 && idx[std::size_t(u)] == K - 1) { idx[std::size_t(u)] = 0; --u; }
        if (u < 0) break;
        ++idx[std::size_t(u)];
      }
      std::vector<SymPoly> final_val(static_cast<std::size_t>(dim));
      for (int r = 0; r < dim; ++r) {
        SymPoly acc;
        for (int b = 0; b < dim; ++b) {
          const SymPoly& m = P[std::size_t(r) * std::size_t(dim) + std::size_t(b)];
          if (m.is_zero() || contracted[std::size_t(b)].is_zero()) continue;
          acc += m * contracted[std::size_t(b)];
        }
        final_val[std::size_t(r)] = acc.scaled(pi_shift);
      }
      auto it = result.terms.find(h);
      if (it == result.terms.end()) {
        result.terms.emplace(h, std::move(final_val));
      } else {
        for (std::size_t v = 0; v < final_val.size(); ++v)
          it->second[v] += final_val[v];
      }
    }
  }
  result.prune();
  if (scalar_rho2) result.rep_weight = rho1w;  // value space stays V
  else result.rep_weight = rho2w;
  return result;
}

FourierExpansion omega_op(int i, const FourierExpansion& f, const Weight& rho) {
  if (i < 1 || i > f.n) throw std::invalid_argument("omega_op: index out of range");
  bool input_nh = is_nearly_holomorphic(f);
  UEAElement block = pbw_normal_form(center_generator(i, f.n), GenOrder::pmhxy());
  FourierExpansion out = apply_lie_element(block, f, rho, rho);
  if (!has_even_coefficients(out))
    throw std::logic_error("omega_op: output failed the evenness assertion");
  if (input_nh && !is_nearly_holomorphic(out))
    throw std::logic_error("omega_op: near-holomorphy was not preserved");
  return out;
}

FourierExpansion char_projection(const Weight& k, const std::vector<Weight>& candidates,
                                 const FourierExpansion& f, const Weight& rho) {
  const int n = f.n;
  bool found = false;
  for (const Weight& c : candidates) found = found || (c == k);
  if (!found)
    throw std::invalid_argument("char_projection: k missing from candidates");
  std::vector<std::vector<Rat>> chis;
  for (const Weight& c : candidates) {
    if (c.rank() != n) throw std::invalid_argument("char_projection: weight rank");
    chis.push_back(character_vector(c));
  }
  for (std::size_t a = 0; a < chis.size(); ++a)
    for (std::size_t b = a + 1; b < chis.size(); ++b)
      if (chis[a] == chis[b])
        throw std::invalid_argument("char_projection: candidate characters collide");

  std::vector<Rat> chi_k = character_vector(k);
  FourierExpansion cur = f;
  Rat c_norm = 1;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    if (candidates[a] == k) continue;
    Rat factor_norm = 0;
    FourierExpansion acc = make_expansion(f.n, f.N, f.denom, f.rep_weight);
    for (int i = 1; i <= n; ++i) {
      Rat diff = chi_k[std::size_t(i - 1)] - chis[a][std::size_t(i - 1)];
      int sgn_diff = sgn(diff);
      factor_norm += abs(diff);
      if (sgn_diff == 0) continue;
      FourierExpansion om = omega_op(i, cur, rho);
      FourierExpansion shifted = expansion_add(
          om, expansion_scale(cur, CycScalar::from_rat(f.N, Rat(-chis[a][std::size_t(i - 1)]))));
      acc = expansion_add(acc, expansion_scale(shifted, CycScalar::from_rat(f.N, Rat(sgn_diff))));
    }
    cur = acc;
    c_norm *= factor_norm;
  }
  return expansion_scale(cur, CycScalar::from_rat(f.N, Rat(1) / c_norm));
}

FourierExpansion dk_operator(const Weight& k, const FourierExpansion& f) {
  LadderResult ladder = scalar_ladder(k);
  const int n = k.rank();
  Weight scalar_w(std::vector<long>(std::size_t(n), k[0]));
  FourierExpansion g = apply_lie_element(ladder.Y, f, k, scalar_w);
  long sum = 0;
  for (long v : k.k) sum += v;
  g = expansion_scale(g, CycScalar::pi_pow_half(f.N, sum - long(n) * k[0]));

  // Project onto the highest weight line of the value space.
  auto rep = build_irrep(k);
  FourierExpansion out = make_expansion(f.n, f.N, f.denom, scalar_w);
  for (const auto& [h, val] : g.terms) {
    std::vector<SymPoly> nv{val[std::size_t(rep->hw_index)]};
    out.terms.emplace(h, std::move(nv));
  }
  out.prune();
  return out;
}

// --- serialization --------------------------------------------------------

std::string write_fx(const FourierExpansion& f) {
  if (!f.slots.empty())
    throw std::invalid_argument("write_fx: slot-extended expansions are not serializable");
  const int K = sym_count(f.n);
  std::ostringstream os;
  os << "FOURIER 1\n";
  os << "n " << f.n << "\n";
  os << "N " << f.N << "\n";
  os << "denominator " << f.denom << "\n";
  os << "weight " << f.rep_weight.to_string() << "\n";
  for (const auto& [h, val] : f.terms) {
    os << "term h";
    for (int i = 1; i <= f.n; ++i)
      for (int j = 1; j <= f.n; ++j)
        os << " " << h[std::size_t(sym_index(i, j, f.n))];
    os << "\n";
    for (std::size_t v = 0; v < val.size(); ++v) {
      for (const auto& [m, c] : val[v].terms()) {
        for (const auto& [half, coords] : c.terms()) {
          if (half % 2 != 0)
            throw std::invalid_argument("write_fx: non-integral pi exponent");
          os << "mono " << v << " " << half / 2 << " " << -m.det_e;
          for (int t = 0; t < K; ++t)
            os << " " << (t < int(m.e.size()) ? long(m.e[std::size_t(t)]) : 0);
          for (int t = 0; t < f.N; ++t)
            os << " " << rat_to_string(t < int(coords.size()) ? coords[std::size_t(t)] : Rat(0));
          os << "\n";
        }
      }
    }
    os << "endterm\n";
  }
  os << "END\n";
  return os.str();
}

FourierExpansion read_fx(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(is, line))
      throw std::invalid_argument(std::string("read_fx: unexpected end before ") + what);
    return line;
  };
  if (next_line("header") != "FOURIER 1")
    throw std::invalid_argument("read_fx: bad magic line");
  int n = 0, N = 0;
  long denom = 0;
  Weight w;
  {
    std::istringstream ls(next_line("n"));
    std::string tag;
    if (!(ls >> tag >> n) || tag != "n") throw std::invalid_argument("read_fx: bad n line");
  }
  {
    std::istringstream ls(next_line("N"));
    std::string tag;
    if (!(ls >> tag >> N) || tag != "N") throw std::invalid_argument("read_fx: bad N line");
  }
  {
    std::istringstream ls(next_line("denominator"));
    std::string tag;
    if (!(ls >> tag >> denom) || tag != "denominator")
      throw std::invalid_argument("read_fx: bad denominator line");
  }
  {
    std::istringstream ls(next_line("weight"));
    std::string tag, rest;
    if (!(ls >> tag >> rest) || tag != "weight")
      throw std::invalid_argument("read_fx: bad weight line");
    w = Weight::parse(rest);
  }
  FourierExpansion f = make_expansion(n, N, denom, w);
  const int K = sym_count(n);
  const int dv = f.value_dim();
  while (true) {
    std::string l = next_line("term or END");
    if (l == "END") break;
    std::istringstream ls(l);
    std::string tag, htag;
    if (!(ls >> tag >> htag) || tag != "term" || htag != "h")
      throw std::invalid_argument("read_fx: expected term line, got '" + l + "'");
    std::vector<std::vector<long>> hfull(std::size_t(n), std::vector<long>(std::size_t(n), 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(ls >> hfull[std::size_t(i)][std::size_t(j)]))
          throw std::invalid_argument("read_fx: short h matrix");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (hfull[std::size_t(i)][std::size_t(j)] != hfull[std::size_t(j)][std::size_t(i)])
          throw std::invalid_argument("read_fx: h matrix is not symmetric");
    std::vector<long> hkey(std::size_t(K), 0);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        hkey[std::size_t(sym_index(i, j, n))] = hfull[std::size_t(i - 1)][std::size_t(j - 1)];
    std::vector<SymPoly> val(static_cast<std::size_t>(dv));
    while (true) {
      std::string ml = next_line("mono or endterm");
      if (ml == "endterm") break;
      std::istringstream ms(ml);
      std::string mtag;
      long v = 0, pi = 0, det = 0;
      if (!(ms >> mtag >> v >> pi >> det) || mtag != "mono")
        throw std::invalid_argument("read_fx: bad mono line '" + ml + "'");
      if (v < 0 || v >= dv) throw std::invalid_argument("read_fx: v_index out of range");
      if (det > 0) throw std::invalid_argument("read_fx: det exponent must be <= 0");
      SMono m;
      m.det_e = -det;
      m.e.assign(std::size_t(K), 0);
      for (int t = 0; t < K; ++t) {
        long e = 0;
        if (!(ms >> e) || e < 0) throw std::invalid_argument("read_fx: bad s exponent");
        m.e[std::size_t(t)] = std::uint16_t(e);
      }
      CycScalar c;
      for (int t = 0; t < N; ++t) {
        std::string rat;
        if (!(ms >> rat)) throw std::invalid_argument("read_fx: short zeta vector");
        Rat r = rat_from_string(rat);
        if (!sp2n::is_zero(r))
          c += CycScalar::zeta_pow(N, t) * r;
      }
      c = c * CycScalar::pi_pow_half(N, 2 * pi);
      if (c.order() == 0 && !c.is_zero())
        throw std::logic_error("read_fx: scalar lost its field");
      val[std::size_t(v)].add_term(m, c);
    }
    if (f.terms.count(hkey))
      throw std::invalid_argument("read_fx: duplicate h matrix");
    f.terms.emplace(std::move(hkey), std::move(val));
  }
  f.prune();
  return f;
}

}  // namespace sp2n
