#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sp2n/exact_algebra.hpp"

#include <random>

using namespace sp2n;

namespace {

UEAElement gen(int n, const Gen& g) { return UEAElement::generator(n, g); }

UEAElement nf(const UEAElement& x) { return pbw_normal_form(x, GenOrder::hxypm()); }

UEAElement random_element(int n, std::mt19937_64& rng, int max_terms = 4,
                          int max_len = 3, bool b_only = false) {
  LieAlgebra alg(n);
  const auto& gens = alg.generators();
  std::uniform_int_distribution<int> nterms(1, max_terms), len(0, max_len),
      pick(0, int(gens.size()) - 1), coeff(-5, 5), den(1, 4);
  UEAElement x(n);
  int t = nterms(rng);
  for (int a = 0; a < t; ++a) {
    Monomial m;
    int l = len(rng);
    for (int b = 0; b < l; ++b) {
      Gen g = gens[size_t(pick(rng))];
      if (b_only) g = Gen::b(g.i, g.j);
      m.push_back(g);
    }
    x.add_term(m, make_rat(coeff(rng), den(rng)));
  }
  return x;
}

}  // namespace

TEST_CASE("bracket relations on the displayed examples") {
  LieAlgebra g1(1), g2(2);

  // [E+(1,1), E-(1,1)] = 4 B(1,1): all four delta terms fire.
  UEAElement expect(1);
  expect.add_term({Gen::b(1, 1)}, 4);
  CHECK(g1.bracket(Gen::eplus(1, 1), Gen::eminus(1, 1)) == expect);

  // [E+(1,2), E+(1,2)] = 0.
  CHECK(g2.bracket(Gen::eplus(1, 2), Gen::eplus(1, 2)).is_zero());

  // [B(1,2), B(2,1)] = B(1,1) - B(2,2).
  UEAElement bb(2);
  bb.add_term({Gen::b(1, 1)}, 1);
  bb.add_term({Gen::b(2, 2)}, -1);
  CHECK(g2.bracket(Gen::b(1, 2), Gen::b(2, 1)) == bb);

  // [B(1,1), E+(1,2)] = E+(1,2).
  UEAElement be(2);
  be.add_term({Gen::eplus(1, 2)}, 1);
  CHECK(g2.bracket(Gen::b(1, 1), Gen::eplus(1, 2)) == be);

  CHECK_THROWS(g1.bracket(Gen::b(1, 2), Gen::b(1, 1)));
}

TEST_CASE("antisymmetry for all generator pairs, n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    LieAlgebra g(n);
    for (const Gen& a : g.generators())
      for (const Gen& b : g.generators()) {
        UEAElement sum = g.bracket(a, b) + g.bracket(b, a);
        CHECK(nf(sum).is_zero());
      }
  }
}

TEST_CASE("Jacobi identity, full scan n <= 2 and sampled n = 3") {
  auto jacobi = [](const LieAlgebra& g, const Gen& a, const Gen& b, const Gen& c) {
    int n = g.rank();
    auto lift = [&](const Gen& x) { return gen(n, x); };
    // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] via the full commutators in U.
    UEAElement total =
        commutator(lift(a), commutator(lift(b), lift(c))) +
        commutator(lift(b), commutator(lift(c), lift(a))) +
        commutator(lift(c), commutator(lift(a), lift(b)));
    return pbw_normal_form(total, GenOrder::hxypm());
  };

  for (int n = 1; n <= 2; ++n) {
    LieAlgebra g(n);
    for (const Gen& a : g.generators())
      for (const Gen& b : g.generators())
        for (const Gen& c : g.generators())
          CHECK(jacobi(g, a, b, c).is_zero());
  }

  LieAlgebra g3(3);
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> pick(0, int(g3.generators().size()) - 1);
  for (int t = 0; t < 500; ++t) {
    const Gen& a = g3.generators()[size_t(pick(rng))];
    const Gen& b = g3.generators()[size_t(pick(rng))];
    const Gen& c = g3.generators()[size_t(pick(rng))];
    CHECK(jacobi(g3, a, b, c).is_zero());
  }
}

TEST_CASE("multiply: identity, bilinearity, distributivity") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 2; ++n) {
    UEAElement one = UEAElement::one(n);
    for (int t = 0; t < 20; ++t) {
      UEAElement x = random_element(n, rng);
      UEAElement y = random_element(n, rng);
      UEAElement z = random_element(n, rng);
      CHECK(multiply(one, x) == x);
      CHECK(multiply(x, one) == x);
      CHECK(multiply(x + y, z) == multiply(x, z) + multiply(y, z));
      CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
    }
  }
  UEAElement a(1), b(1), expect(1);
  a.add_term({Gen::b(1, 1)}, 2);
  b.add_term({Gen::eplus(1, 1)}, 3);
  expect.add_term({Gen::b(1, 1), Gen::eplus(1, 1)}, 6);
  CHECK(multiply(a, b) == expect);
}

TEST_CASE("pbw normal form: spec examples") {
  // E-(1,1)E+(1,1) with E+ < E-  ->  E+(1,1)E-(1,1) - 4 B(1,1).
  UEAElement x(1);
  x.add_term({Gen::eminus(1, 1), Gen::eplus(1, 1)}, 1);
  UEAElement expect(1);
  expect.add_term({Gen::eplus(1, 1), Gen::eminus(1, 1)}, 1);
  expect.add_term({Gen::b(1, 1)}, -4);
  CHECK(nf(x) == expect);

  // B(2,1)B(1,2), HXYPM -> B(1,2)B(2,1) - B(1,1) + B(2,2).
  UEAElement y(2);
  y.add_term({Gen::b(2, 1), Gen::b(1, 2)}, 1);
  UEAElement ey(2);
  ey.add_term({Gen::b(1, 2), Gen::b(2, 1)}, 1);
  ey.add_term({Gen::b(1, 1)}, -1);
  ey.add_term({Gen::b(2, 2)}, 1);
  CHECK(nf(y) == ey);

  // Already sorted monomial is fixed.
  UEAElement z(2);
  z.add_term({Gen::b(1, 1), Gen::eplus(1, 2)}, 1);
  CHECK(nf(z) == z);
}

TEST_CASE("pbw normal form: confluence, idempotence, multiplicativity") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 2; ++n) {
    for (int t = 0; t < 15; ++t) {
      UEAElement x = random_element(n, rng, 3, 4);
      for (GenOrder ord : {GenOrder::hxypm(), GenOrder::pmhxy(), GenOrder::hyxpm()}) {
        UEAElement left = pbw_normal_form(x, ord, RewriteStrategy::LeftmostFirst);
        UEAElement right = pbw_normal_form(x, ord, RewriteStrategy::RightmostFirst);
        CHECK(left == right);
        CHECK(pbw_normal_form(left, ord) == left);
      }
      UEAElement y = random_element(n, rng, 3, 3);
      UEAElement a = nf(multiply(x, y));
      UEAElement b = nf(multiply(nf(x), nf(y)));
      CHECK(a == b);
    }
  }
}

TEST_CASE("commutator basics") {
  std::mt19937_64 rng(3);
  UEAElement x = random_element(2, rng);
  CHECK(nf(commutator(x, x)).is_zero());
  CHECK(nf(commutator(x, UEAElement::one(2))).is_zero());
  UEAElement c = commutator(gen(1, Gen::eplus(1, 1)), gen(1, Gen::eminus(1, 1)));
  UEAElement expect(1);
  expect.add_term({Gen::b(1, 1)}, 4);
  CHECK(nf(c) == expect);
}

TEST_CASE("iota involution") {
  UEAElement x(2);
  x.add_term({Gen::b(1, 2)}, 1);
  UEAElement expect(2);
  expect.add_term({Gen::b(2, 1)}, 1);
  CHECK(iota_involution(x) == expect);

  UEAElement y(2);
  y.add_term({Gen::b(1, 1), Gen::b(1, 2)}, 1);
  UEAElement ey(2);
  ey.add_term({Gen::b(2, 1), Gen::b(1, 1)}, 1);
  CHECK(iota_involution(y) == ey);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    UEAElement z = random_element(2, rng, 4, 4, /*b_only=*/true);
    CHECK(iota_involution(iota_involution(z)) == z);
  }

  UEAElement bad(1);
  bad.add_term({Gen::eplus(1, 1)}, 1);
  CHECK_THROWS(iota_involution(bad));
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + int(t % 3);
    UEAElement x = random_element(n, rng, 5, 4);
    CHECK(parse_uea(print_uea(x), n) == x);
  }
  UEAElement one = UEAElement::one(2);
  CHECK(print_uea(one) == "1 * 1");
  CHECK(parse_uea("1 * 1", 2) == one);
  CHECK(parse_uea("-4/3 * B(1,2) E+(1,1)", 2).size() == 1);
}
