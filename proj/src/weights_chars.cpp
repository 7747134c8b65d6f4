#include "sp2n/weights_chars.hpp"

#include "sp2n/center_gens.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sp2n {

std::string Weight::to_string() const {
  std::ostringstream os;
  for (std::size_t a = 0; a < k.size(); ++a) {
    if (a) os << ",";
    os << k[a];
  }
  return os.str();
}

Weight Weight::parse(const std::string& s) {
  std::vector<long> entries;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("Weight::parse: empty entry in '" + s + "'");
    entries.push_back(std::stol(tok));
  }
  if (entries.empty()) throw std::invalid_argument("Weight::parse: no entries in '" + s + "'");
  return Weight(std::move(entries));
}

std::vector<WeylElement> all_weyl_elements(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n), 0);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<WeylElement> out;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      WeylElement w;
      w.sigma = perm;
      w.flip.resize(size_t(n));
      for (int j = 0; j < n; ++j) w.flip[size_t(j)] = (mask >> j) & 1u;
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Weight dot_action(const WeylElement& w, const Weight& k) {
  const int n = k.rank();
  if (w.rank() != n) throw std::invalid_argument("dot_action: rank mismatch");
  std::vector<long> r(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    long s = w.sigma[size_t(j)];
    long eps = w.flip[size_t(j)] ? -1 : 1;
    r[size_t(j)] = eps * (k[int(s) - 1] - s) + (j + 1);
  }
  return Weight(std::move(r));
}

std::set<Weight> dot_orbit(const Weight& k) {
  if (k.rank() > 6) throw std::invalid_argument("dot_orbit: rank too large (n <= 6)");
  std::set<Weight> orbit;
  for (const WeylElement& w : all_weyl_elements(k.rank()))
    orbit.insert(dot_action(w, k));
  return orbit;
}

namespace {

// Diagonal profile of an element: the purely diagonal monomials of its
// normal form under the evaluation order, recorded as exponent vectors.
// Everything else acts as zero on a highest weight vector once the raising
// generators have been commuted to the right.
struct DiagonalProfile {
  int n = 0;
  std::vector<std::pair<Rat, std::vector<int>>> terms;  // coeff, exponents of B(a,a)
};

DiagonalProfile diagonal_profile(const UEAElement& D) {
  DiagonalProfile prof;
  prof.n = D.rank();
  UEAElement nf = pbw_normal_form(D, GenOrder::hyxpm());
  for (const auto& [m, c] : nf.terms()) {
    bool diag = true;
    for (const Gen& g : m)
      if (g.kind != Gen::B || g.i != g.j) { diag = false; break; }
    if (!diag) continue;
    std::vector<int> exps(size_t(prof.n), 0);
    for (const Gen& g : m) ++exps[size_t(g.i - 1)];
    prof.terms.emplace_back(c, std::move(exps));
  }
  return prof;
}

Rat evaluate_profile(const DiagonalProfile& prof, const Weight& k) {
  if (k.rank() != prof.n)
    throw std::invalid_argument("infinitesimal_character: rank mismatch");
  Rat total = 0;
  for (const auto& [c, exps] : prof.terms) {
    Rat v = c;
    for (int a = 0; a < prof.n; ++a)
      for (int e = 0; e < exps[size_t(a)]; ++e) v *= Rat(k[a]);
    total += v;
  }
  return total;
}

}  // namespace

Rat infinitesimal_character(const Weight& k, const UEAElement& D) {
  return evaluate_profile(diagonal_profile(D), k);
}

std::vector<Rat> character_vector(const Weight& k) {
  const int n = k.rank();
  static std::map<std::pair<int, int>, DiagonalProfile> cache;
  static std::mutex mu;
  std::vector<Rat> chi;
  for (int i = 1; i <= n; ++i) {
    const DiagonalProfile* prof;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto key = std::make_pair(i, n);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, diagonal_profile(center_generator(i, n))).first;
      prof = &it->second;
    }
    chi.push_back(evaluate_profile(*prof, k));
  }
  return chi;
}

bool characters_separate(const Weight& k, const Weight& kprime) {
  if (k.rank() != kprime.rank())
    throw std::invalid_argument("characters_separate: rank mismatch");
  return character_vector(k) != character_vector(kprime);
}

std::vector<long> critical_points(const Weight& k) {
  if (!k.is_dominant())
    throw std::invalid_argument("critical_points: weight must be dominant");
  const long n = k.rank();
  const long top = k.k.back() - n;
  std::vector<long> out;
  for (long r = 1; r <= top; ++r)
    if ((r - top) % 2 == 0) out.push_back(r);
  return out;
}

}  // namespace sp2n
