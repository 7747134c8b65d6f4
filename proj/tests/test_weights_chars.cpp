#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sp2n/center_gens.hpp"
#include "sp2n/weights_chars.hpp"

#include <random>

using namespace sp2n;

namespace {

Weight wt(std::vector<long> v) { return Weight(std::move(v)); }

}  // namespace

TEST_CASE("dot action") {
  WeylElement id1{{1}, {false}};
  CHECK(dot_action(id1, wt({7})) == wt({7}));

  WeylElement flip1{{1}, {true}};
  CHECK(dot_action(flip1, wt({5})) == wt({-3}));  // 2 - k
  CHECK(dot_action(flip1, wt({1})) == wt({1}));   // fixed point

  WeylElement swap2{{2, 1}, {false, false}};
  CHECK(dot_action(swap2, wt({5, 3})) == wt({2, 6}));  // (k2-1, k1+1)
}

TEST_CASE("dot orbit") {
  CHECK(dot_orbit(wt({5})) == std::set<Weight>({wt({5}), wt({-3})}));
  CHECK(dot_orbit(wt({1})) == std::set<Weight>({wt({1})}));
  for (long k1 = -2; k1 <= 4; ++k1)
    for (long k2 = -2; k2 <= k1; ++k2) {
      std::size_t sz = dot_orbit(wt({k1, k2})).size();
      CHECK(8 % sz == 0);  // orbit size divides 2^n n!
    }
  CHECK_THROWS(dot_orbit(wt({1, 1, 1, 1, 1, 1, 1})));
}

TEST_CASE("infinitesimal character: closed forms") {
  const UEAElement& d2_1 = center_generator(1, 1);
  for (long k = -4; k <= 12; ++k) {
    CHECK(infinitesimal_character(wt({k}), d2_1) == make_rat(2 * k * k - 4 * k));
  }
  CHECK(infinitesimal_character(wt({12}), d2_1) == make_rat(240));

  const UEAElement& d2_2 = center_generator(1, 2);
  for (long k1 = -2; k1 <= 6; ++k1)
    for (long k2 = -2; k2 <= 6; ++k2) {
      Rat expect = make_rat(2 * k1 * k1 + 2 * k2 * k2 - 4 * k1 - 8 * k2);
      CHECK(infinitesimal_character(wt({k1, k2}), d2_2) == expect);
    }

  CHECK(infinitesimal_character(wt({9}), UEAElement::one(1)) == make_rat(1));
}

TEST_CASE("character dot invariance, exhaustive n <= 2") {
  for (int n = 1; n <= 2; ++n) {
    auto weyl = all_weyl_elements(n);
    std::vector<Weight> samples;
    if (n == 1) {
      for (long k = -6; k <= 10; ++k) samples.push_back(wt({k}));
    } else {
      for (long k1 = -6; k1 <= 10; k1 += 2)
        for (long k2 = -6; k2 <= 10; k2 += 3) samples.push_back(wt({k1, k2}));
    }
    for (const Weight& k : samples) {
      auto chi = character_vector(k);
      for (const WeylElement& w : weyl) {
        CHECK(character_vector(dot_action(w, k)) == chi);
      }
    }
  }
}

TEST_CASE("character dot invariance, sampled n = 3") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> entry(-6, 10);
  auto weyl = all_weyl_elements(3);
  std::uniform_int_distribution<std::size_t> pickw(0, weyl.size() - 1);
  for (int t = 0; t < 12; ++t) {
    Weight k = wt({entry(rng), entry(rng), entry(rng)});
    auto chi = character_vector(k);
    for (int u = 0; u < 6; ++u) {
      const WeylElement& w = weyl[pickw(rng)];
      CHECK(character_vector(dot_action(w, k)) == chi);
    }
  }
}

TEST_CASE("integrality on dominant weights") {
  for (long k1 = 1; k1 <= 10; ++k1)
    for (long k2 = 1; k2 <= k1; ++k2) {
      auto chi = character_vector(wt({k1, k2}));
      for (const Rat& v : chi) CHECK(v.get_den() == 1);
    }
}

TEST_CASE("character separation in the lemma range, n = 2") {
  CHECK_FALSE(characters_separate(wt({5, 3}), wt({5, 3})));
  CHECK(characters_separate(wt({5, 3}), wt({4, 2})));
  // chi(D_2): 68-44 = hand values 2k1^2+2k2^2-4k1-8k2.
  CHECK(infinitesimal_character(wt({5, 3}), center_generator(1, 2)) == make_rat(24));
  CHECK(infinitesimal_character(wt({4, 2}), center_generator(1, 2)) == make_rat(8));

  // Same dot orbit at n=1 means equal characters.
  for (long k = 2; k <= 8; ++k)
    CHECK_FALSE(characters_separate(wt({k}), wt({2 - k})));

  // Orbit membership implies equal characters (necessity direction).
  for (long k1 = 1; k1 <= 6; ++k1)
    for (long k2 = 1; k2 <= k1; ++k2)
      for (const Weight& o : dot_orbit(wt({k1, k2})))
        CHECK_FALSE(characters_separate(wt({k1, k2}), o));
}

TEST_CASE("critical points") {
  CHECK(critical_points(wt({10, 8})) == std::vector<long>({2, 4, 6}));
  CHECK(critical_points(wt({5, 3})) == std::vector<long>({1}));      // k_n = n+1
  CHECK(critical_points(wt({4, 2})) == std::vector<long>({}));      // k_n <= n
  CHECK(critical_points(wt({9})) == std::vector<long>({2, 4, 6, 8}));
  CHECK_THROWS(critical_points(wt({3, 5})));
}

TEST_CASE("weight parsing") {
  CHECK(Weight::parse("5,3") == wt({5, 3}));
  CHECK(Weight::parse("-2") == wt({-2}));
  CHECK(wt({5, 3}).is_dominant());
  CHECK_FALSE(wt({3, 5}).is_dominant());
  CHECK(wt({5, 3}).is_strictly_positive());
  CHECK_FALSE(wt({5, 0}).is_strictly_positive());
  CHECK_THROWS(Weight::parse(""));
}
