#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sp2n/center_gens.hpp"
#include "sp2n/rep_modules.hpp"

#include <random>

using namespace sp2n;

namespace {

Weight wt(std::vector<long> v) { return Weight(std::move(v)); }

// Pieri-rule oracle: multiplicity of F_mu in Sym^2(C^n) (x) F_k equals 1 when
// mu - k adds two boxes in weakly increasing... concretely mu >= k entrywise,
// sum(mu - k) = 2, and the added boxes form a horizontal strip: mu_{i+1} <= k_i.
int pieri_sym2_multiplicity(const Weight& k, const Weight& mu) {
  const int n = k.rank();
  long total = 0;
  for (int a = 0; a < n; ++a) {
    long d = mu[a] - k[a];
    if (d < 0 || d > 2) return 0;
    total += d;
  }
  if (total != 2) return 0;
  if (!mu.is_dominant()) return 0;
  for (int a = 0; a + 1 < n; ++a)
    if (mu[a + 1] > k[a]) return 0;
  return 1;
}

VermaVector basis_vec(const std::shared_ptr<const GLIrrep>& rep, const EMono& m, int b) {
  VermaVector v;
  v.rep = rep;
  v.grade = int(m.size());
  v.add(m, b, 1);
  return v;
}

// act_uea drops zero components, so scalar action by zero yields an empty map.
bool acts_by_scalar(const std::map<int, VermaVector>& img, const VermaVector& v,
                    const Rat& c) {
  if (sp2n::is_zero(c)) return img.empty();
  if (img.size() != 1 || img.count(v.grade) != 1) return false;
  return img.at(v.grade) == v * c;
}

}  // namespace

TEST_CASE("weyl dimension") {
  CHECK(weyl_dimension(wt({4, 4, 4})) == 1);
  CHECK(weyl_dimension(wt({5, 3})) == 3);
  for (long k1 = 1; k1 <= 5; ++k1)
    for (long k2 = 0; k2 <= k1; ++k2)
      CHECK(weyl_dimension(wt({k1, k2})) == k1 - k2 + 1);
  CHECK(weyl_dimension(wt({1, 0, 0})) == 3);
  CHECK(weyl_dimension(wt({2, 1, 0})) == 8);
  CHECK_THROWS(weyl_dimension(wt({1, 2})));
}

TEST_CASE("build_irrep: standard, determinant and (5,3) models") {
  auto std3 = build_irrep(wt({1, 0, 0}));
  CHECK(std3->dim == 3);

  auto det2 = build_irrep(wt({4, 4}));
  CHECK(det2->dim == 1);
  CHECK(det2->action(1, 1)(0, 0) == make_rat(4));
  CHECK(det2->action(2, 2)(0, 0) == make_rat(4));
  CHECK(det2->action(1, 2)(0, 0) == make_rat(0));

  auto neg = build_irrep(wt({-2, -2}));
  CHECK(neg->dim == 1);
  CHECK(neg->action(1, 1)(0, 0) == make_rat(-2));

  auto r53 = build_irrep(wt({5, 3}));
  CHECK(r53->dim == 3);
  std::set<Weight> ws(r53->weights.begin(), r53->weights.end());
  CHECK(ws == std::set<Weight>({wt({5, 3}), wt({4, 4}), wt({3, 5})}));
}

TEST_CASE("build_irrep: action matrices satisfy gl_n brackets, hw killed") {
  for (const Weight& k : {wt({5, 3}), wt({3, 1}), wt({2, 1, 0})}) {
    auto rep = build_irrep(k);
    const int n = rep->n;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int p = 1; p <= n; ++p)
          for (int q = 1; q <= n; ++q) {
            RatMat lhs = rep->action(i, j) * rep->action(p, q) -
                         rep->action(p, q) * rep->action(i, j);
            RatMat rhs = rat_zero(rep->dim, rep->dim);
            if (j == p) rhs += rep->action(i, q);
            if (i == q) rhs -= rep->action(p, j);
            CHECK(lhs == rhs);
          }
    // Highest weight vector: killed by raising, diagonal eigenvalues k_i.
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        RatVec col = rep->action(i, j).col(rep->hw_index);
        for (Eigen::Index r = 0; r < col.size(); ++r) CHECK(is_zero(col(r)));
      }
      RatVec diag = rep->action(i, i).col(rep->hw_index);
      for (Eigen::Index r = 0; r < diag.size(); ++r) {
        if (int(r) == rep->hw_index) CHECK(diag(r) == make_rat(k[i - 1]));
        else CHECK(is_zero(diag(r)));
      }
    }
  }
}

TEST_CASE("verma action: spec examples") {
  auto rep = build_irrep(wt({7}));  // n=1, k arbitrary scalar weight 7
  VermaVector v0 = highest_weight_vector(rep);

  // p- kills grade 0.
  CHECK(act_gen(Gen::eminus(1, 1), v0).is_zero());

  // E-(1,1) (E+(1,1) (x) v0) = -4k (1 (x) v0): forced by the chi oracle.
  VermaVector e1 = act_gen(Gen::eplus(1, 1), v0);
  VermaVector back = act_gen(Gen::eminus(1, 1), e1);
  VermaVector expect = v0 * make_rat(-4 * 7);
  CHECK(back == expect);
}

TEST_CASE("central action: D_2 acts by chi_k on v_k and on higher grades") {
  for (const Weight& k : {wt({5, 3}), wt({4, 2}), wt({3, 3})}) {
    auto rep = build_irrep(k);
    const UEAElement& d2 = center_generator(1, 2);
    Rat chi = infinitesimal_character(k, d2);
    VermaVector vk = highest_weight_vector(rep);
    CHECK(acts_by_scalar(act_uea(d2, vk), vk, chi));

    // Scalar action on all of N(k): basis of grades 1 and 2.
    for (int m = 1; m <= 2; ++m) {
      for (const EMono& mono : grade_monomials(2, m)) {
        for (int b = 0; b < rep->dim; ++b) {
          VermaVector v = basis_vec(rep, mono, b);
          CHECK(acts_by_scalar(act_uea(d2, v), v, chi));
        }
      }
    }
  }
}

TEST_CASE("act_uea cross-check of the n=1 and n=2 character closed forms") {
  for (long k = 1; k <= 10; ++k) {
    auto rep = build_irrep(wt({k}));
    VermaVector vk = highest_weight_vector(rep);
    CHECK(acts_by_scalar(act_uea(center_generator(1, 1), vk), vk,
                         make_rat(2 * k * k - 4 * k)));
  }
  for (long k1 = 1; k1 <= 4; ++k1)
    for (long k2 = 0; k2 <= k1; ++k2) {
      auto rep = build_irrep(wt({k1, k2}));
      VermaVector vk = highest_weight_vector(rep);
      Rat expect = make_rat(2 * k1 * k1 + 2 * k2 * k2 - 4 * k1 - 8 * k2);
      CHECK(acts_by_scalar(act_uea(center_generator(1, 2), vk), vk, expect));
    }
}

TEST_CASE("action relations: [X, Y] acts as the bracket on grades <= 2") {
  LieAlgebra alg(2);
  auto rep = build_irrep(wt({3, 1}));
  for (int m = 0; m <= 2; ++m) {
    for (const EMono& mono : grade_monomials(2, m)) {
      for (int b = 0; b < rep->dim; ++b) {
        VermaVector v = basis_vec(rep, mono, b);
        for (const Gen& x : alg.generators()) {
          for (const Gen& y : alg.generators()) {
            VermaVector lhs;
            lhs.rep = rep;
            lhs.grade = 0;
            auto xy = act_gen(x, act_gen(y, v));
            auto yx = act_gen(y, act_gen(x, v));
            lhs = xy;
            lhs += yx * Rat(-1);
            auto rhs_map = act_uea(alg.bracket(x, y), v);
            if (lhs.is_zero()) {
              CHECK(rhs_map.empty());
            } else {
              REQUIRE(rhs_map.size() == 1);
              CHECK(rhs_map.begin()->second == lhs);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("ktype highest weight vectors") {
  // m=0: only v_k.
  auto hw0 = ktype_hwvs(wt({5, 3}), 0, wt({5, 3}));
  CHECK(hw0.size() == 1);

  // n=2, k=(5,3), grade 1: scalar type (5,5) occurs once; (8,3) unreachable.
  CHECK(ktype_hwvs(wt({5, 3}), 1, wt({5, 5})).size() == 1);
  CHECK(ktype_hwvs(wt({5, 3}), 1, wt({8, 3})).empty());
  CHECK(ktype_hwvs(wt({5, 3}), 1, wt({7, 3})).size() == 1);

  // Grade-1 K-type multiplicities match the Pieri oracle for Sym^2 (x) F_k.
  for (const Weight& k : {wt({5, 3}), wt({4, 1}), wt({2, 2})}) {
    for (long m1 = k[0]; m1 <= k[0] + 2; ++m1)
      for (long m2 = k[1] - 1; m2 <= k[1] + 2; ++m2) {
        Weight mu = wt({m1, m2});
        if (!mu.is_dominant()) continue;
        int got = int(ktype_hwvs(k, 1, mu).size());
        CHECK(got == pieri_sym2_multiplicity(k, mu));
      }
  }
  // Rank three sample.
  {
    Weight k = wt({2, 1, 0});
    for (long a = 0; a <= 2; ++a)
      for (long b = 0; b <= 2; ++b)
        for (long c = 0; c <= 2; ++c) {
          Weight mu = wt({k[0] + a, k[1] + b, k[2] + c});
          if (!mu.is_dominant()) continue;
          int got = int(ktype_hwvs(k, 1, mu).size());
          CHECK(got == pieri_sym2_multiplicity(k, mu));
        }
  }
}

TEST_CASE("ktype bound") {
  CHECK(ktype_bound_check(wt({5, 3}), 3));
  CHECK(ktype_bound_check(wt({4}), 4));
  CHECK(ktype_bound_check(wt({2, 1, 0}), 2));
}

TEST_CASE("contravariant form") {
  auto rep = build_irrep(wt({6}));
  VermaVector v0 = highest_weight_vector(rep);
  CHECK(contravariant_form(v0, v0) == make_rat(1));

  // <E+ v0, E+ v0> = <v0, E- E+ v0> = -4k.
  VermaVector e = act_gen(Gen::eplus(1, 1), v0);
  CHECK(contravariant_form(e, e) == make_rat(-24));

  // Contravariance <E+(i,j) u, v> = <u, E-(i,j) v> on random pairs.
  auto rep2 = build_irrep(wt({4, 2}));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coeff(-3, 3);
  for (int t = 0; t < 20; ++t) {
    for (int m = 0; m <= 1; ++m) {
      VermaVector u;
      u.rep = rep2;
      u.grade = m;
      for (const EMono& mono : grade_monomials(2, m))
        for (int b = 0; b < rep2->dim; ++b) u.add(mono, b, coeff(rng));
      VermaVector v;
      v.rep = rep2;
      v.grade = m + 1;
      for (const EMono& mono : grade_monomials(2, m + 1))
        for (int b = 0; b < rep2->dim; ++b) v.add(mono, b, coeff(rng));
      for (int i = 1; i <= 2; ++i)
        for (int j = i; j <= 2; ++j) {
          Rat lhs = contravariant_form(act_gen(Gen::eplus(i, j), u), v);
          Rat rhs = contravariant_form(u, act_gen(Gen::eminus(i, j), v));
          CHECK(lhs == rhs);
        }
    }
  }

  // Distinct weights pair to zero.
  VermaVector a = basis_vec(rep2, {{1, 1}}, 0);
  VermaVector b2 = basis_vec(rep2, {{1, 2}}, 0);
  CHECK(contravariant_form(a, b2) == make_rat(0));
}

TEST_CASE("lrho projection") {
  auto rep = build_irrep(wt({5, 3}));
  RatVec w = RatVec::Constant(rep->dim, Rat(0));
  w(rep->hw_index) = 3;
  w(1) = 7;  // some lower-weight component
  CHECK(lrho_project(*rep, w) == make_rat(3));
}

TEST_CASE("scalar ladder") {
  // Scalar type: Y = 1 at grade 0.
  LadderResult triv = scalar_ladder(wt({5, 5}));
  CHECK(triv.grade == 0);
  CHECK(triv.Y == UEAElement::one(2));

  // (5,3): grade 1, one-dimensional solution space.
  LadderResult l53 = scalar_ladder(wt({5, 3}));
  CHECK(l53.grade == 1);
  CHECK(l53.solution_dim == 1);
  // Y v_k is the scalar-type highest weight vector: verify via action.
  auto rep = build_irrep(wt({5, 3}));
  auto img = act_uea(l53.Y, highest_weight_vector(rep));
  REQUIRE(img.count(1) == 1);
  VermaVector yv = img.at(1);
  for (int i = 1; i <= 2; ++i)
    for (int j = i + 1; j <= 2; ++j)
      CHECK(act_gen(Gen::b(i, j), yv).is_zero());
  // Weight (k1, k1).
  for (const auto& [key, c] : yv.coords) {
    Weight total = emono_weight(key.first, rep->weights[std::size_t(key.second)]);
    CHECK(total == wt({5, 5}));
  }

  CHECK_THROWS(scalar_ladder(wt({5, 4})));  // parity mismatch
  CHECK_THROWS(scalar_ladder(wt({3, 2, 1})));  // k_n <= n
}
