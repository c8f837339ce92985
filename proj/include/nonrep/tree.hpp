#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "nonrep/kspecial.hpp"
#include "nonrep/sequence.hpp"

namespace nonrep {

// Complete k-ary tree of height h with the implicit labeling: root 1,
// children of v are k(v-1)+2 .. kv+1, parent of v is ceil((v-1)/k).
struct TreeShape {
  int k = 1;
  int h = 1;

  long long vertex_count() const;
  long long parent(long long v) const { return (v - 2) / k + 1; }
  long long first_child(long long v) const { return k * (v - 1) + 2; }
  int child_position(long long v) const { return (int)(v - first_child(parent(v)) + 1); } // 1..k
  int depth(long long v) const;
  bool is_leaf(long long v) const { return first_child(v) > vertex_count(); }
  bool operator==(const TreeShape&) const = default;
};

// Edge colors, 1-based values, indexed by the child endpoint: colors[v-2] is
// the color of the edge (parent(v), v). 0 marks an uncolored edge.
struct EdgeColoring {
  TreeShape shape;
  std::vector<int> colors;
  int palette_size = 0;

  int color_of(long long v) const { return colors[(size_t)v - 2]; }
  bool operator==(const EdgeColoring&) const = default;
};

// A path whose whole color word is a square.
struct PathWitness {
  long long u = 0, v = 0;          // endpoints, u < v
  std::vector<int> color_word;     // edge colors read from u to v
  Square square;                   // spans the entire word
};

// Color the tree from a word: the root's j-th child edge gets s_j, and below
// an edge colored s_i the j-th child edge gets s_{i+j}. Requires the word to
// have length >= k*h; throws std::invalid_argument naming that bound.
EdgeColoring derived_coloring(const TreeShape& shape, const Sequence& seq);

// Scan every vertex pair (through the lowest common ancestor) and report the
// first pair, in (u, v) order, whose whole path word is a square. Sub-paths
// are paths, so whole-word checking covers factor squares. Throws
// std::invalid_argument on an uncolored edge.
std::optional<PathWitness> find_repetitive_path(const EdgeColoring& coloring);

// Explicit nonrepetitive coloring of T_{k,2} on floor(3k/2)+1 colors: level-1
// edges get 1..k; below the i-th of them, one edge of each color > k plus the
// ceil(k/2)-1 cyclically next level-1 colors.
EdgeColoring sv_coloring_h2(int k);

// True iff [derived coloring of T_{k,h} repetitive => word not k-special].
// Holds for every input; the converse can fail at finite height.
bool verify_theorem2_forward(const Sequence& seq, int k, int h);

// Nonrepetitive coloring of T_{k,h} on ceil((h+1)k/2) colors, derived from
// S_{n,n-k} with n = ceil((h+1)k/2). Requires h >= 3.
EdgeColoring corollary_small_h(int k, int h);

// The explicit 5-color extension of the depth-3 coloring derived from
// S_{4,2} to T_{2,4}: below each vertex 8..15, the left child edge gets the
// new color 5 and the right child edges get 1,1,3,4,2,3,2,3 in vertex order.
EdgeColoring extend_t24_example();

enum class SearchMode { exists, count_classes };

struct ChromaticOptions {
  double budget_seconds = -1;   // <0: unlimited
  std::atomic<bool>* cancel = nullptr;
  std::string checkpoint_path;  // pi driver only
  bool resume = false;
};

struct ChromaticReport {
  TreeShape shape;
  int palette = 0;
  SearchMode mode = SearchMode::exists;
  bool exists = false;
  std::optional<EdgeColoring> witness_coloring;
  long long class_count = -1;   // count_classes mode only
  long long nodes_explored = 0;
  bool exhaustive = false;
  int pi_prime = -1;            // set by compute_pi_prime when determined
  int lower_bound = 0;
  int upper_bound = 0;
};

// Backtracking over edges in label order with two symmetry-breaking rules
// (colors first appear in increasing order; sibling edge colors strictly
// increase) and an incremental path check at each newly colored edge.
// exists: stop at the first complete coloring. count_classes: enumerate all
// survivors and count distinct canonical forms under sibling permutations
// composed with color permutations (palette <= 8 in this mode).
ChromaticReport chromatic_index_exact(const TreeShape& shape, int palette, SearchMode mode,
                                      const ChromaticOptions& options = {});

// Upper bound available by construction: k for h=1, floor(3k/2)+1 for h=2,
// min(ceil((h+1)k/2), 3k+1) for h>=3.
int construction_upper_bound(int k, int h);

// Exact Thue chromatic index by increasing-palette search, falling back to
// the construction witness if the search reaches the construction bound.
// On budget exhaustion returns exhaustive=false with the bracket found so far.
ChromaticReport compute_pi_prime(const TreeShape& shape, const ChromaticOptions& options = {});

} // namespace nonrep
