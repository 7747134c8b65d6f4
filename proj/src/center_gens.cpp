#include "sp2n/center_gens.hpp"

#include "sp2n/util.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sp2n {

namespace {

// Adjacency rules: which letters may follow each letter.
bool may_follow(Letter prev, Letter next) {
  switch (prev) {
    case Letter::Eplus: return next == Letter::Eminus || next == Letter::Bstar;
    case Letter::Eminus: return next == Letter::Eplus || next == Letter::B;
    case Letter::B: return next == Letter::Eplus || next == Letter::B;
    case Letter::Bstar: return next == Letter::Eminus || next == Letter::Bstar;
  }
  return false;
}

const Letter kLetters[4] = {Letter::B, Letter::Bstar, Letter::Eplus, Letter::Eminus};

}  // namespace

std::string word_to_string(const Word& w) {
  std::string s;
  for (Letter l : w) {
    switch (l) {
      case Letter::B: s += "B"; break;
      case Letter::Bstar: s += "B*"; break;
      case Letter::Eplus: s += "E+"; break;
      case Letter::Eminus: s += "E-"; break;
    }
  }
  return s;
}

Word word_from_string(const std::string& s) {
  Word w;
  std::size_t p = 0;
  while (p < s.size()) {
    if (s[p] == 'B') {
      if (p + 1 < s.size() && s[p + 1] == '*') { w.push_back(Letter::Bstar); p += 2; }
      else { w.push_back(Letter::B); p += 1; }
    } else if (s[p] == 'E' && p + 1 < s.size() && s[p + 1] == '+') {
      w.push_back(Letter::Eplus); p += 2;
    } else if (s[p] == 'E' && p + 1 < s.size() && s[p + 1] == '-') {
      w.push_back(Letter::Eminus); p += 2;
    } else {
      throw std::invalid_argument("word_from_string: bad token at position " +
                                  std::to_string(p) + " in '" + s + "'");
    }
  }
  return w;
}

bool is_valid_word(const Word& w) {
  if (w.empty()) return false;
  long plus = 0, minus = 0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (w[t] == Letter::Eplus) ++plus;
    if (w[t] == Letter::Eminus) ++minus;
    if (t + 1 < w.size() && !may_follow(w[t], w[t + 1])) return false;
  }
  return plus == minus;
}

std::vector<Word> enumerate_words(int r) {
  if (r < 1) throw std::invalid_argument("enumerate_words: r must be >= 1");
  const int len = 2 * r;
  std::vector<Word> out;
  Word cur;
  // Depth-first generation with adjacency and balance pruning.
  auto rec = [&](auto&& self, int plus_minus_diff) -> void {
    if (int(cur.size()) == len) {
      if (plus_minus_diff == 0) out.push_back(cur);
      return;
    }
    int remaining = len - int(cur.size());
    if (std::abs(plus_minus_diff) > remaining) return;
    for (Letter l : kLetters) {
      if (!cur.empty() && !may_follow(cur.back(), l)) continue;
      int d = plus_minus_diff + (l == Letter::Eplus) - (l == Letter::Eminus);
      cur.push_back(l);
      self(self, d);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

int isolated_cyclic_count(const Word& w) {
  const int m = int(w.size());
  if (m < 2) return 0;
  // Occurrence at cyclic position p covers {p, p+1 mod m}.
  std::vector<bool> occ(size_t(m), false);
  for (int p = 0; p < m; ++p) {
    Letter a = w[size_t(p)], b = w[size_t((p + 1) % m)];
    occ[size_t(p)] = (a == Letter::Eminus && b == Letter::B) ||
                     (a == Letter::B && b == Letter::Eplus);
  }
  // Maximum matching of non-overlapping length-2 arcs on a cycle: run the
  // linear DP twice, once without the wrap-around arc at m-1 and once taking
  // it (which blocks the arcs at m-2 and 0).
  auto linear = [&](int from, int to) {  // arc slots in [from, to)
    int prev2 = 0, prev1 = 0;
    for (int p = from; p < to; ++p) {
      int best = prev1;
      if (occ[size_t(p)]) best = std::max(best, prev2 + 1);
      prev2 = prev1;
      prev1 = best;
    }
    return prev1;
  };
  int no_wrap = linear(0, m - 1);
  int with_wrap = 0;
  if (occ[size_t(m - 1)]) with_wrap = 1 + (m >= 4 ? linear(1, m - 2) : 0);
  return std::max(no_wrap, with_wrap);
}

int word_sign(const Word& w) {
  long stars = long(std::count(w.begin(), w.end(), Letter::Bstar));
  return stars % 2 == 0 ? 1 : -1;
}

UEAElement trace_word(const Word& w, int n) {
  if (n < 1) throw std::invalid_argument("trace_word: rank must be positive");
  const int m = int(w.size());
  UEAElement acc(n);
  if (m == 0) return acc;
  std::vector<int> idx(size_t(m), 1);  // index tuple (i_1..i_m), 1-based
  for (;;) {
    Monomial mono;
    mono.reserve(size_t(m));
    for (int t = 0; t < m; ++t) {
      int row = idx[size_t(t)];
      int col = idx[size_t((t + 1) % m)];
      switch (w[size_t(t)]) {
        case Letter::B: mono.push_back(Gen::b(row, col)); break;
        case Letter::Bstar: mono.push_back(Gen::b(col, row)); break;
        case Letter::Eplus: mono.push_back(Gen::eplus(row, col)); break;
        case Letter::Eminus: mono.push_back(Gen::eminus(row, col)); break;
      }
    }
    acc.add_term(mono, 1);
    int t = m - 1;
    while (t >= 0 && idx[size_t(t)] == n) { idx[size_t(t)] = 1; --t; }
    if (t < 0) break;
    ++idx[size_t(t)];
  }
  return acc;
}

const UEAElement& center_generator(int r, int n) {
  if (r < 1) throw std::invalid_argument("center_generator: r must be >= 1");
  if (n < 1) throw std::invalid_argument("center_generator: rank must be positive");
  static std::map<std::pair<int, int>, UEAElement> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(r, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<Word> words = enumerate_words(r);
  std::vector<UEAElement> parts = parallel_map<UEAElement>(
      words.size(), [&](std::size_t i) {
        const Word& w = words[i];
        return trace_word(w, n) * Rat(word_sign(w));
      });
  UEAElement d(n);
  for (const UEAElement& p : parts) d += p;
  return cache.emplace(key, std::move(d)).first->second;
}

bool is_central(const UEAElement& x, int n) {
  LieAlgebra g(n);
  const auto& gens = g.generators();
  std::vector<char> ok = parallel_map<char>(gens.size(), [&](std::size_t i) {
    UEAElement c = commutator(x, UEAElement::generator(n, gens[i]));
    return char(pbw_normal_form(c, GenOrder::hxypm()).is_zero() ? 1 : 0);
  });
  for (char c : ok)
    if (!c) return false;
  return true;
}

}  // namespace sp2n
