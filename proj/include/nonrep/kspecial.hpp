#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonrep/sequence.hpp"

namespace nonrep {

// An index sequence i_1..i_{2r} into a word, 1-based, certifying that the
// word is not k-special:
//   (a) s_{i_j} = s_{i_{j+r}} for 1 <= j <= r (the symbol word is a square);
//   (b) i_1 > ... > i_m < ... < i_{2r} for the valley position m, 1 < m <= 2r;
//   (c) |i_j - i_{j+1}| <= k for all j;
//   (d) if m < 2r then i_{m+1} < i_m + k (strict).
struct KBadWitness {
  std::vector<int> indices;
  int valley = 0;
  bool operator==(const KBadWitness&) const = default;
};

// Re-check conditions (a)-(d) directly. Throws std::out_of_range if any
// index is outside 1..length.
bool check_witness(const Sequence& seq, const KBadWitness& w, int k);

// Search for a k-bad index sequence. Among all witnesses returns one with
// minimal 2r, then the lexicographically least index list. Throws
// std::invalid_argument for k < 1.
std::optional<KBadWitness> find_k_bad(const Sequence& seq, int k);

inline bool is_k_special(const Sequence& seq, int k) {
  return !find_k_bad(seq, k).has_value();
}

// True iff some k-bad index sequence has max(i_1..i_{2r}) == pos (1-based).
// Used for incremental checks: appending a symbol can only create witnesses
// whose maximum index is the new position.
bool has_k_bad_ending_at(const Sequence& seq, int k, int pos);

// Lexicographically least pair i < j < i + 2k with s_i = s_j (1-based), if
// any. Present iff a k-bad witness with 2r <= 4 and m <= 3 exists.
std::optional<std::pair<int, int>> min_distance_criterion(const Sequence& seq, int k);

// The word 1,2,...,n,1,2,...,c. Requires n > c >= 0.
Sequence s_n_c(int n, int c);

// k-special word on exactly 3k+1 symbols: the aba/bab-free word with c
// replaced by a block of k+1 fresh symbols and a, b by blocks of k each.
Sequence construct_3k_plus_1(int k, int target_length);

// k-special word on 3(k+1) symbols: block_expand(thue_squarefree, k+1).
Sequence corollary_3k3_sequence(int k, int target_length);

struct FkOptions {
  int length_cap = -1;  // -1: default 8k+8
  int threads = 1;
  std::string checkpoint_path;  // empty: no checkpointing
  bool resume = false;          // reuse completed branches from checkpoint
  double budget_seconds = -1;   // <0: unlimited
  std::atomic<bool>* cancel = nullptr;
};

// Result of the maximal-k-special-length search on n symbols.
struct FkReport {
  int k = 0;
  int n = 0;
  int max_length = 0;                  // lower bound when not exhaustive
  std::vector<Sequence> witnesses;     // all normalized words of max length
  bool exhaustive = false;
  long long nodes_explored = 0;
};

// Depth-first search over normalized words (each new symbol is at most one
// larger than every symbol seen before), extending one position at a time and
// pruning as soon as the new position completes a k-bad index sequence. The
// report is deterministic regardless of thread count.
FkReport search_fk(int k, int n, const FkOptions& options = {});

} // namespace nonrep
