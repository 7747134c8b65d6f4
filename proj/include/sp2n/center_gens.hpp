#ifndef SP2N_CENTER_GENS_HPP
#define SP2N_CENTER_GENS_HPP

#include "sp2n/exact_algebra.hpp"

#include <string>
#include <vector>

namespace sp2n {

/// Letters of the word alphabet used to assemble center generators.
enum class Letter : unsigned char { B, Bstar, Eplus, Eminus };

using Word = std::vector<Letter>;

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);

/// Adjacency/multiplicity conditions on a word. The adjacency rules do not
/// constrain the last letter; E+ and E- must occur equally often.
bool is_valid_word(const Word& w);

/// All valid words of length 2r, each once, in a fixed deterministic order.
std::vector<Word> enumerate_words(int r);

/// L(w): maximum number of pairwise non-overlapping occurrences of the
/// patterns E-B and BE+, occurrences taken cyclically around the word.
int isolated_cyclic_count(const Word& w);

/// Sign of a word in the center-generator sum: (-1)^(number of B* letters).
/// Each passage through the transposed block carries a -1; for words of
/// length <= 4 this coincides with (-1)^isolated_cyclic_count.
int word_sign(const Word& w);

/// Expands Tr(w) at rank n: sum over index tuples of the entry monomials,
/// with (B)_kl = B(k,l), (B*)_kl = B(l,k), (E+-)_kl = E+-(k,l).
UEAElement trace_word(const Word& w, int n);

/// D_2r = sum over valid words of length 2r of word_sign(w) Tr(w).
/// Central for every r >= 1; D_2, ..., D_2n generate the center at rank n.
/// Results are cached per (r, n).
const UEAElement& center_generator(int r, int n);

/// True iff the normal form of [x, g] vanishes for every generator g.
bool is_central(const UEAElement& x, int n);

}  // namespace sp2n

#endif  // SP2N_CENTER_GENS_HPP
