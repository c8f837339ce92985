#include "nonrep/kspecial.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace nonrep {

bool check_witness(const Sequence& seq, const KBadWitness& w, int k) {
  const auto& s = seq.symbols;
  int L = seq.length();
  int n = (int)w.indices.size();
  int m = w.valley;
  for (int i : w.indices)
    if (i < 1 || i > L) throw std::out_of_range("check_witness: index " + std::to_string(i) +
                                                " outside 1.." + std::to_string(L));
  if (n < 2 || n % 2 != 0) return false;
  if (m <= 1 || m > n) return false;
  int r = n / 2;
  for (int j = 0; j < r; j++)                               // (a)
    if (s[w.indices[j] - 1] != s[w.indices[j + r] - 1]) return false;
  for (int j = 0; j + 1 < m; j++)                           // (b) decreasing arm
    if (w.indices[j] <= w.indices[j + 1]) return false;
  for (int j = m - 1; j + 1 < n; j++)                       // (b) increasing arm
    if (w.indices[j] >= w.indices[j + 1]) return false;
  for (int j = 0; j + 1 < n; j++)                           // (c) step bound
    if (std::abs(w.indices[j] - w.indices[j + 1]) > k) return false;
  if (m < n && !(w.indices[m] < w.indices[m - 1] + k)) return false;  // (d) strict
  return true;
}

namespace {

// Breadth-first search over pointer pairs (a, b) = (i_j, i_{j+r}), advancing
// both arms of a candidate k-bad index sequence one pair per layer. Two arm
// shapes cover every valley position:
//   macro L (valley in the first half): the a-arm decreases, may turn once
//     (strict step <= k-1 at the turn), then increases; the b-arm increases.
//     Closure after j >= 2 pairs: b1 > a, and b1 - a <= k-1 if the a-arm
//     never turned (the valley is i_r itself), else <= k.
//   macro R (valley in the second half): the a-arm only decreases; the b-arm
//     decreases, may turn once (strict step <= k-1, possibly as its first
//     move), then increases. Closure after j >= 1 pairs: a > b1, a - b1 <= k.
// Flags: macro L keeps 0 = seed, 1 = decreased, 2 = turned (closure needs
// flag >= 1); macro R keeps 0 = not turned, 1 = turned.
struct Engine {
  const std::vector<int>& s;
  int L, k;
  std::vector<std::vector<int>> occ;       // positions per symbol, 1-based
  std::vector<int> stamp_l, stamp_r;       // visited epochs
  int epoch = 0;

  Engine(const Sequence& seq, int k_) : s(seq.symbols), L(seq.length()), k(k_) {
    int alpha = 0;
    for (int t : s) alpha = std::max(alpha, t + 1);
    occ.resize(alpha);
    for (int p = 1; p <= L; p++) occ[s[p - 1]].push_back(p);
    stamp_l.assign((size_t)3 * (L + 1) * (L + 1), 0);
    stamp_r.assign((size_t)2 * (L + 1) * (L + 1), 0);
  }

  int* slot_l(int flag, int a, int b) { return &stamp_l[((size_t)flag * (L + 1) + a) * (L + 1) + b]; }
  int* slot_r(int flag, int a, int b) { return &stamp_r[((size_t)flag * (L + 1) + a) * (L + 1) + b]; }

  // Runs one BFS for a fixed b1. Seeds: (a1, b1) for each a1 in seed_as.
  // close_at_b: if > 0 a closure only counts when the b pointer sits there.
  // best: layers >= best are pruned. Returns the least closure layer found,
  // or 0 if none.
  int run_b1(int b1, const std::vector<int>& seed_as, int close_at_b, int best) {
    epoch++;
    struct St { int macro, flag, a, b; };
    std::deque<std::pair<St, int>> q;
    for (int a1 : seed_as) {
      if (s[a1 - 1] != s[b1 - 1]) continue;
      if (*slot_l(0, a1, b1) != epoch) { *slot_l(0, a1, b1) = epoch; q.push_back({{0, 0, a1, b1}, 1}); }
      if (*slot_r(0, a1, b1) != epoch) { *slot_r(0, a1, b1) = epoch; q.push_back({{1, 0, a1, b1}, 1}); }
    }
    int found = 0;
    while (!q.empty()) {
      auto [st, j] = q.front();
      q.pop_front();
      if (best > 0 && j >= best) continue;
      if (found > 0 && j >= found) continue;
      // closure checks
      if (st.macro == 0 && st.flag != 0) {
        int bound = (st.flag == 2) ? k : k - 1;
        if (b1 > st.a && b1 - st.a <= bound && (close_at_b == 0 || st.b == close_at_b)) {
          if (found == 0 || j < found) found = j;
          continue;
        }
      }
      if (st.macro == 1) {
        if (st.a > b1 && st.a - b1 <= k && (close_at_b == 0 || st.b == close_at_b)) {
          if (found == 0 || j < found) found = j;
          continue;
        }
      }
      // transitions: advance both pointers one pair
      if (st.macro == 0) {
        for (int b2 = st.b + 1; b2 <= std::min(L, st.b + k); b2++) {
          if (st.flag <= 1) {
            for (int a2 = std::max(1, st.a - k); a2 < st.a; a2++) {
              if (s[a2 - 1] != s[b2 - 1]) continue;
              if (*slot_l(1, a2, b2) != epoch) { *slot_l(1, a2, b2) = epoch; q.push_back({{0, 1, a2, b2}, j + 1}); }
            }
          }
          if (st.flag == 1) {
            for (int a2 = st.a + 1; a2 <= std::min(L, st.a + k - 1); a2++) {
              if (s[a2 - 1] != s[b2 - 1]) continue;
              if (*slot_l(2, a2, b2) != epoch) { *slot_l(2, a2, b2) = epoch; q.push_back({{0, 2, a2, b2}, j + 1}); }
            }
          } else if (st.flag == 2) {
            for (int a2 = st.a + 1; a2 <= std::min(L, st.a + k); a2++) {
              if (s[a2 - 1] != s[b2 - 1]) continue;
              if (*slot_l(2, a2, b2) != epoch) { *slot_l(2, a2, b2) = epoch; q.push_back({{0, 2, a2, b2}, j + 1}); }
            }
          }
        }
      } else {
        for (int a2 = std::max(1, st.a - k); a2 < st.a; a2++) {
          if (st.flag == 0) {
            for (int b2 = std::max(1, st.b - k); b2 < st.b; b2++) {
              if (s[a2 - 1] != s[b2 - 1]) continue;
              if (*slot_r(0, a2, b2) != epoch) { *slot_r(0, a2, b2) = epoch; q.push_back({{1, 0, a2, b2}, j + 1}); }
            }
            for (int b2 = st.b + 1; b2 <= std::min(L, st.b + k - 1); b2++) {
              if (s[a2 - 1] != s[b2 - 1]) continue;
              if (*slot_r(1, a2, b2) != epoch) { *slot_r(1, a2, b2) = epoch; q.push_back({{1, 1, a2, b2}, j + 1}); }
            }
          } else {
            for (int b2 = st.b + 1; b2 <= std::min(L, st.b + k); b2++) {
              if (s[a2 - 1] != s[b2 - 1]) continue;
              if (*slot_r(1, a2, b2) != epoch) { *slot_r(1, a2, b2) = epoch; q.push_back({{1, 1, a2, b2}, j + 1}); }
            }
          }
        }
      }
    }
    return found;
  }

  // Least r over all k-bad index sequences; 0 if the word is k-special.
  int min_r() {
    int best = 0;
    for (int b1 = 1; b1 <= L; b1++) {
      int got = run_b1(b1, occ[s[b1 - 1]], 0, best);
      if (got > 0 && (best == 0 || got < best)) best = got;
      if (best == 1) break;
    }
    return best;
  }

  // Existence of a witness whose maximum index equals pos (T1: i_1 = pos;
  // T2: i_{2r} = pos). The word itself must end at pos.
  bool exists_ending_at(int pos) {
    std::vector<int> head = {pos};
    for (int b1 : occ[s[pos - 1]])
      if (run_b1(b1, head, 0, 0) > 0) return true;
    for (int b1 = 1; b1 <= L; b1++)
      if (run_b1(b1, occ[s[b1 - 1]], pos, 0) > 0) return true;
    return false;
  }
};

// Lexicographically least witness with exactly 2r indices, by direct DFS in
// index order: candidates below the previous index (still decreasing) come
// before candidates above it (turned).
struct LexSearch {
  const std::vector<int>& s;
  int L, k, r, n;
  std::vector<int> idx;
  KBadWitness out;
  bool done = false;

  LexSearch(const Sequence& seq, int k_, int r_)
      : s(seq.symbols), L(seq.length()), k(k_), r(r_), n(2 * r_), idx(2 * r_, 0) {}

  void rec(int t, bool turned, int valley) {
    if (done) return;
    if (t == n) {
      out.indices = idx;
      out.valley = turned ? valley : n;
      done = true;
      return;
    }
    auto try_cand = [&](int cand, bool turnnow) {
      if (done) return;
      if (t >= r && s[cand - 1] != s[idx[t - r] - 1]) return;
      idx[t] = cand;
      rec(t + 1, turned || turnnow, (!turned && turnnow) ? t : valley);
    };
    if (t == 0) {
      for (int c = 2; c <= L && !done; c++) try_cand(c, false);
      return;
    }
    int prev = idx[t - 1];
    if (!turned) {
      for (int c = std::max(1, prev - k); c < prev && !done; c++) try_cand(c, false);
      if (t >= 2)
        for (int c = prev + 1; c <= std::min(L, prev + k - 1) && !done; c++) try_cand(c, true);
    } else {
      for (int c = prev + 1; c <= std::min(L, prev + k) && !done; c++) try_cand(c, true);
    }
  }
};

} // namespace

std::optional<KBadWitness> find_k_bad(const Sequence& seq, int k) {
  if (k < 1) throw std::invalid_argument("find_k_bad: k must be >= 1");
  if (seq.length() < 2) return std::nullopt;
  Engine eng(seq, k);
  int r = eng.min_r();
  if (r == 0) return std::nullopt;
  LexSearch lex(seq, k, r);
  lex.rec(0, false, 0);
  if (!lex.done) throw std::logic_error("find_k_bad: witness extraction failed");
  return lex.out;
}

bool has_k_bad_ending_at(const Sequence& seq, int k, int pos) {
  if (k < 1) throw std::invalid_argument("has_k_bad_ending_at: k must be >= 1");
  if (pos < 1 || pos > seq.length()) throw std::out_of_range("has_k_bad_ending_at: bad position");
  const auto& s = seq.symbols;
  // Short witnesses first: an equal pair at distance < 2k ending at pos.
  for (int i = std::max(1, pos - 2 * k + 1); i < pos; i++)
    if (s[i - 1] == s[pos - 1]) return true;
  Engine eng(seq, k);
  return eng.exists_ending_at(pos);
}

std::optional<std::pair<int, int>> min_distance_criterion(const Sequence& seq, int k) {
  if (k < 1) throw std::invalid_argument("min_distance_criterion: k must be >= 1");
  const auto& s = seq.symbols;
  int L = seq.length();
  for (int i = 1; i <= L; i++)
    for (int j = i + 1; j < i + 2 * k && j <= L; j++)
      if (s[i - 1] == s[j - 1]) return std::make_pair(i, j);
  return std::nullopt;
}

Sequence s_n_c(int n, int c) {
  if (!(n > c && c >= 0)) throw std::invalid_argument("s_n_c: need n > c >= 0");
  Sequence out;
  out.alphabet_size = n;
  out.symbols.reserve(n + c);
  for (int i = 0; i < n; i++) out.symbols.push_back(i);
  for (int i = 0; i < c; i++) out.symbols.push_back(i);
  return out;
}

Sequence construct_3k_plus_1(int k, int target_length) {
  if (k < 1) throw std::invalid_argument("construct_3k_plus_1: k must be >= 1");
  if (target_length < 0) throw std::invalid_argument("construct_3k_plus_1: negative length");
  // Every base letter expands to at least k symbols, so a base prefix of
  // target_length letters always suffices.
  Sequence base = thue_aba_bab_free(target_length);
  Sequence out;
  out.alphabet_size = 3 * k + 1;
  out.symbols.reserve(target_length);
  // Blocks: c -> 0..k, a -> k+1..2k, b -> 2k+1..3k.
  for (int t : base.symbols) {
    if ((int)out.symbols.size() >= target_length) break;
    int lo, hi;
    if (t == 2) { lo = 0; hi = k; }          // c
    else if (t == 0) { lo = k + 1; hi = 2 * k; }   // a
    else { lo = 2 * k + 1; hi = 3 * k; }     // b
    for (int v = lo; v <= hi && (int)out.symbols.size() < target_length; v++)
      out.symbols.push_back(v);
  }
  return out;
}

Sequence corollary_3k3_sequence(int k, int target_length) {
  if (k < 1) throw std::invalid_argument("corollary_3k3_sequence: k must be >= 1");
  if (target_length < 0) throw std::invalid_argument("corollary_3k3_sequence: negative length");
  int w = k + 1;
  Sequence expanded = block_expand(thue_squarefree((target_length + w - 1) / w), w);
  expanded.symbols.resize(target_length);
  return expanded;
}

} // namespace nonrep
