#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace nonrep {

// A finite word. Symbols are 0-based internally; all I/O shifts to 1-based.
struct Sequence {
  std::vector<int> symbols;
  int alphabet_size = 0;

  int length() const { return (int)symbols.size(); }
  bool operator==(const Sequence&) const = default;
};

// A factor ww: positions [start, start+half_length) repeat immediately.
struct Square {
  int start = 0;       // 0-based
  int half_length = 0; // r >= 1
  bool operator==(const Square&) const = default;
};

// Least (start, half_length) square factor, if any.
std::optional<Square> find_square(const Sequence& seq);

// Least-start, then shortest, factor of length >= 2 equal to its reversal.
// Returns (start, length), 0-based.
std::optional<std::pair<int, int>> find_palindrome(const Sequence& seq);

// Prefix of a fixed square-free word on 3 symbols (fixed point of
// 1->123, 2->13, 3->2; starts 1,2,3,1,3,2 in 1-based display).
Sequence thue_squarefree(int length);

// Square-free and palindrome-free word on 4 symbols: the square-free base
// with symbol 4 occupying every third position.
Sequence palindrome_free_thue(int length);

// Square-free word on {a,b,c} = {1,2,3} with no factor aba and no factor bab,
// built by iterating a 5-letter substitution and expanding through two
// intermediate alphabets. Starts with c.
Sequence thue_aba_bab_free(int length);

// Replace each symbol t by the block t*w, t*w+1, ..., t*w+w-1 of fresh symbols.
Sequence block_expand(const Sequence& seq, int w);

} // namespace nonrep
