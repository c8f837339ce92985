#include "nonrep/sequence.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace nonrep {

std::optional<Square> find_square(const Sequence& seq) {
  const auto& s = seq.symbols;
  int n = seq.length();
  // For each start, a Z-array of the suffix gives the least half_length in
  // O(n) exactly: a square (start, r) exists iff the suffix matches itself
  // shifted by r for at least r symbols.
  std::vector<int> z;
  for (int start = 0; start + 1 < n; start++) {
    int m = n - start;
    z.assign(m, 0);
    int l = 0, r = 0;
    for (int i = 1; i < m; i++) {
      if (i < r) z[i] = std::min(r - i, z[i - l]);
      while (i + z[i] < m && s[start + z[i]] == s[start + i + z[i]]) z[i]++;
      if (i + z[i] > r) { l = i; r = i + z[i]; }
    }
    for (int half = 1; 2 * half <= m; half++)
      if (z[half] >= half) return Square{start, half};
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_palindrome(const Sequence& seq) {
  const auto& s = seq.symbols;
  int n = seq.length();
  for (int start = 0; start + 1 < n; start++) {
    for (int len = 2; start + len <= n; len++) {
      bool pal = true;
      for (int i = 0, j = len - 1; i < j; i++, j--)
        if (s[start + i] != s[start + j]) { pal = false; break; }
      if (pal) return std::make_pair(start, len);
    }
  }
  return std::nullopt;
}

Sequence thue_squarefree(int length) {
  if (length < 0) throw std::invalid_argument("thue_squarefree: negative length");
  Sequence out;
  out.alphabet_size = 3;
  if (length == 0) return out;
  // Fixed point of 0 -> 012, 1 -> 02, 2 -> 1 (prolongable, so every iterate
  // is a prefix of the next).
  static const std::array<std::vector<int>, 3> rules = {
      std::vector<int>{0, 1, 2}, std::vector<int>{0, 2}, std::vector<int>{1}};
  std::vector<int> w = {0};
  while ((int)w.size() < length) {
    std::vector<int> next;
    next.reserve(w.size() * 3);
    for (int t : w)
      for (int x : rules[t]) next.push_back(x);
    w.swap(next);
  }
  w.resize(length);
  out.symbols = std::move(w);
  return out;
}

Sequence palindrome_free_thue(int length) {
  if (length < 0) throw std::invalid_argument("palindrome_free_thue: negative length");
  Sequence base = thue_squarefree(length);
  Sequence out;
  out.alphabet_size = 4;
  out.symbols.reserve(length);
  int bi = 0;
  for (int i = 0; i < length; i++) {
    if (i % 3 == 2)
      out.symbols.push_back(3);
    else
      out.symbols.push_back(base.symbols[bi++]);
  }
  return out;
}

Sequence thue_aba_bab_free(int length) {
  if (length < 0) throw std::invalid_argument("thue_aba_bab_free: negative length");
  Sequence out;
  out.alphabet_size = 3;
  if (length == 0) return out;
  // Stage 1: iterate the 5-letter substitution from B (prolongable: B -> BDC).
  // Stage 2: map into {x,y,z,u}. Stage 3: expand into {a,b,c} = {0,1,2}.
  auto sub5 = [](char c) -> const char* {
    switch (c) {
      case 'A': return "BDAEAC";
      case 'B': return "BDC";
      case 'C': return "BDAE";
      case 'D': return "BEAC";
      case 'E': return "BEAE";
    }
    throw std::logic_error("thue_aba_bab_free: bad 5-letter symbol");
  };
  auto map4 = [](char c) -> const char* {
    switch (c) {
      case 'A': return "zuyxu";
      case 'B': return "zu";
      case 'C': return "zuy";
      case 'D': return "zxu";
      case 'E': return "zxy";
    }
    throw std::logic_error("thue_aba_bab_free: bad 5-letter symbol");
  };
  auto expand3 = [](char c) -> const char* {
    switch (c) {
      case 'x': return "ca";
      case 'y': return "cb";
      case 'z': return "cab";
      case 'u': return "cba";
    }
    throw std::logic_error("thue_aba_bab_free: bad 4-letter symbol");
  };
  auto final_length = [&](const std::string& w5) {
    long long n = 0;
    for (char c5 : w5)
      for (const char* p4 = map4(c5); *p4; p4++)
        for (const char* p3 = expand3(*p4); *p3; p3++) n++;
    return n;
  };
  std::string w5 = "B";
  while (final_length(w5) < length) {
    std::string next;
    for (char c : w5) next += sub5(c);
    w5.swap(next);
  }
  out.symbols.reserve(length);
  for (char c5 : w5) {
    for (const char* p4 = map4(c5); *p4; p4++) {
      for (const char* p3 = expand3(*p4); *p3; p3++) {
        if ((int)out.symbols.size() >= length) return out;
        out.symbols.push_back(*p3 - 'a');
      }
    }
  }
  return out;
}

Sequence block_expand(const Sequence& seq, int w) {
  if (w < 1) throw std::invalid_argument("block_expand: width must be >= 1");
  Sequence out;
  out.alphabet_size = seq.alphabet_size * w;
  out.symbols.reserve((size_t)seq.length() * w);
  for (int t : seq.symbols)
    for (int d = 0; d < w; d++) out.symbols.push_back(t * w + d);
  return out;
}

} // namespace nonrep
