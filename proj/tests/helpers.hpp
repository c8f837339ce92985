#pragma once

// Small independent oracles for the property tests: everything here is the
// dumbest correct implementation, kept separate from the library's algorithms.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "nonrep/kspecial.hpp"
#include "nonrep/sequence.hpp"
#include "nonrep/tree.hpp"

namespace oracle {

using nonrep::EdgeColoring;
using nonrep::KBadWitness;
using nonrep::Sequence;
using nonrep::Square;
using nonrep::TreeShape;

inline Sequence random_word(std::mt19937& rng, int len, int alphabet) {
  Sequence s;
  s.alphabet_size = alphabet;
  std::uniform_int_distribution<int> d(0, alphabet - 1);
  for (int i = 0; i < len; i++) s.symbols.push_back(d(rng));
  return s;
}

inline std::optional<Square> naive_square(const Sequence& s) {
  int L = s.length();
  for (int start = 0; start < L; start++)
    for (int half = 1; start + 2 * half <= L; half++) {
      bool eq = true;
      for (int i = 0; i < half && eq; i++)
        eq = s.symbols[(size_t)start + i] == s.symbols[(size_t)start + half + i];
      if (eq) return Square{start, half};
    }
  return std::nullopt;
}

inline std::optional<std::pair<int, int>> naive_palindrome(const Sequence& s) {
  int L = s.length();
  for (int start = 0; start < L; start++)
    for (int len = 2; start + len <= L; len++) {
      bool eq = true;
      for (int i = 0; i < len / 2 && eq; i++)
        eq = s.symbols[(size_t)start + i] == s.symbols[(size_t)start + len - 1 - i];
      if (eq) return std::make_pair(start, len);
    }
  return std::nullopt;
}

// Enumerate every k-bad index sequence with exactly r pairs by placing the
// strictly decreasing arm, the valley, and the strictly increasing arm
// directly from the four defining conditions. Nothing shared with the
// library's search.
struct BruteKBad {
  const Sequence& s;
  int k, r, m;  // valley position m: i_1 > ... > i_m < ... < i_{2r}
  std::vector<int> idx;  // 1-based indices
  std::vector<KBadWitness>* sink = nullptr;
  bool stop_at_first = false;
  bool found = false;

  BruteKBad(const Sequence& s, int k) : s(s), k(k), r(0), m(0) {}

  bool symbol_ok(int t) {  // t slots placed, 1-based slot t just set
    if (t <= r) return true;
    return s.symbols[(size_t)idx[(size_t)t - 1] - 1] ==
           s.symbols[(size_t)idx[(size_t)t - 1 - r] - 1];
  }

  void rec(int t) {
    if (found && stop_at_first) return;
    if (t > 2 * r) {
      if (sink) sink->push_back(KBadWitness{idx, m});
      found = true;
      return;
    }
    int L = s.length();
    int prev = idx[(size_t)t - 2];
    if (t <= m) {
      for (int c = std::max(1, prev - k); c <= prev - 1; c++) {
        idx[(size_t)t - 1] = c;
        if (symbol_ok(t)) rec(t + 1);
        if (found && stop_at_first) return;
      }
    } else {
      int hi = (t == m + 1) ? prev + k - 1 : prev + k;  // first ascent strict
      for (int c = prev + 1; c <= std::min(L, hi); c++) {
        idx[(size_t)t - 1] = c;
        if (symbol_ok(t)) rec(t + 1);
        if (found && stop_at_first) return;
      }
    }
  }

  void run(int r_target) {
    r = r_target;
    idx.assign((size_t)2 * r, 0);
    for (m = 2; m <= 2 * r; m++)
      for (int i1 = 1; i1 <= s.length(); i1++) {
        idx[0] = i1;
        if (symbol_ok(1)) rec(2);
        if (found && stop_at_first) return;
      }
  }
};

inline bool brute_exists(const Sequence& s, int k, int rmax) {
  for (int r = 1; r <= rmax; r++) {
    BruteKBad b(s, k);
    b.stop_at_first = true;
    b.run(r);
    if (b.found) return true;
  }
  return false;
}

// Lexicographically least witness at the minimal r <= rmax, if any.
inline std::optional<KBadWitness> brute_best(const Sequence& s, int k, int rmax) {
  for (int r = 1; r <= rmax; r++) {
    std::vector<KBadWitness> all;
    BruteKBad b(s, k);
    b.sink = &all;
    b.run(r);
    if (!all.empty()) {
      auto best = std::min_element(all.begin(), all.end(),
                                   [](const KBadWitness& x, const KBadWitness& y) {
                                     return x.indices < y.indices;
                                   });
      return *best;
    }
  }
  return std::nullopt;
}

// True iff a witness with 2r <= 4 and valley <= 3 exists (checked by brute force).
inline bool brute_short_witness(const Sequence& s, int k) {
  for (int r = 1; r <= 2; r++) {
    std::vector<KBadWitness> all;
    BruteKBad b(s, k);
    b.sink = &all;
    b.run(r);
    for (const auto& w : all)
      if (w.valley <= 3) return true;
  }
  return false;
}

inline std::vector<int> path_colors(const EdgeColoring& col, long long u, long long v) {
  const TreeShape& t = col.shape;
  std::vector<long long> au{u}, av{v};
  while (au.back() != 1) au.push_back(t.parent(au.back()));
  while (av.back() != 1) av.push_back(t.parent(av.back()));
  // drop the common tail, keep the lca once
  while (au.size() >= 2 && av.size() >= 2 && au[au.size() - 2] == av[av.size() - 2]) {
    au.pop_back();
    av.pop_back();
  }
  std::vector<int> w;
  for (size_t i = 0; i + 1 < au.size(); i++) w.push_back(col.color_of(au[i]));
  for (size_t i = av.size() - 1; i >= 1; i--) w.push_back(col.color_of(av[i - 1]));
  return w;
}

inline bool has_factor_square(const std::vector<int>& w) {
  int L = (int)w.size();
  for (int start = 0; start < L; start++)
    for (int half = 1; start + 2 * half <= L; half++) {
      bool eq = true;
      for (int i = 0; i < half && eq; i++) eq = w[(size_t)start + i] == w[(size_t)start + half + i];
      if (eq) return true;
    }
  return false;
}

// Any path (not only whole words): factor squares over all vertex pairs.
inline bool naive_repetitive(const EdgeColoring& col) {
  long long n = col.shape.vertex_count();
  for (long long u = 1; u <= n; u++)
    for (long long v = u + 1; v <= n; v++)
      if (has_factor_square(path_colors(col, u, v))) return true;
  return false;
}

inline EdgeColoring random_coloring(std::mt19937& rng, const TreeShape& shape, int palette) {
  EdgeColoring col;
  col.shape = shape;
  col.palette_size = palette;
  std::uniform_int_distribution<int> d(1, palette);
  for (long long v = 2; v <= shape.vertex_count(); v++) col.colors.push_back(d(rng));
  return col;
}

}  // namespace oracle
