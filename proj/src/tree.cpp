#include "nonrep/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nonrep {

long long TreeShape::vertex_count() const {
  if (k < 1 || h < 0) throw std::invalid_argument("TreeShape: need k >= 1 and h >= 0");
  if (k == 1) return h + 1;
  long long total = 1, level = 1;
  for (int d = 1; d <= h; d++) {
    level *= k;
    total += level;
  }
  return total;
}

int TreeShape::depth(long long v) const {
  int d = 0;
  while (v > 1) {
    v = parent(v);
    d++;
  }
  return d;
}

EdgeColoring derived_coloring(const TreeShape& shape, const Sequence& seq) {
  long long need = (long long)shape.k * shape.h;
  if (seq.length() < need)
    throw std::invalid_argument("derived_coloring: sequence of length " +
                                std::to_string(seq.length()) + " too short; need k*h = " +
                                std::to_string(need));
  long long n = shape.vertex_count();
  EdgeColoring col;
  col.shape = shape;
  col.palette_size = seq.alphabet_size;
  col.colors.assign((size_t)n - 1, 0);
  // Color index of the edge to v = sum of child positions along the path
  // from the root; computed incrementally from the parent's index.
  std::vector<long long> index((size_t)n + 1, 0);
  for (long long v = 2; v <= n; v++) {
    long long p = shape.parent(v);
    index[(size_t)v] = index[(size_t)p] + shape.child_position(v);
    col.colors[(size_t)v - 2] = seq.symbols[(size_t)index[(size_t)v] - 1] + 1;
  }
  return col;
}

namespace {

// Color word along the path u -> v (u, v distinct), read from u's end.
std::vector<int> path_word(const EdgeColoring& col, long long u, long long v) {
  const TreeShape& t = col.shape;
  std::vector<int> left, right;
  int du = t.depth(u), dv = t.depth(v);
  while (du > dv) {
    left.push_back(col.color_of(u));
    u = t.parent(u);
    du--;
  }
  while (dv > du) {
    right.push_back(col.color_of(v));
    v = t.parent(v);
    dv--;
  }
  while (u != v) {
    left.push_back(col.color_of(u));
    u = t.parent(u);
    right.push_back(col.color_of(v));
    v = t.parent(v);
  }
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

}  // namespace

std::optional<PathWitness> find_repetitive_path(const EdgeColoring& coloring) {
  long long n = coloring.shape.vertex_count();
  if ((long long)coloring.colors.size() != n - 1)
    throw std::invalid_argument("find_repetitive_path: coloring has wrong edge count");
  for (int c : coloring.colors)
    if (c == 0) throw std::invalid_argument("find_repetitive_path: uncolored edge");
  for (long long u = 1; u <= n; u++) {
    for (long long v = u + 1; v <= n; v++) {
      std::vector<int> w = path_word(coloring, u, v);
      size_t half = w.size() / 2;
      if (w.size() % 2 != 0) continue;
      if (std::equal(w.begin(), w.begin() + half, w.begin() + half)) {
        PathWitness pw;
        pw.u = u;
        pw.v = v;
        pw.color_word = std::move(w);
        pw.square = Square{0, (int)half};
        return pw;
      }
    }
  }
  return std::nullopt;
}

EdgeColoring sv_coloring_h2(int k) {
  if (k < 1) throw std::invalid_argument("sv_coloring_h2: k must be >= 1");
  TreeShape shape{k, 2};
  EdgeColoring col;
  col.shape = shape;
  col.palette_size = 3 * k / 2 + 1;
  col.colors.assign((size_t)shape.vertex_count() - 1, 0);
  int m = (k + 1) / 2 - 1;  // cyclic colors reused below each level-1 edge
  for (int i = 1; i <= k; i++) {
    long long v = 1 + i;
    col.colors[(size_t)v - 2] = i;
    long long child = shape.first_child(v);
    for (int t = 1; t <= m; t++)
      col.colors[(size_t)child++ - 2] = ((i - 1 + t) % k) + 1;
    for (int c = k + 1; c <= col.palette_size; c++)
      col.colors[(size_t)child++ - 2] = c;
  }
  return col;
}

bool verify_theorem2_forward(const Sequence& seq, int k, int h) {
  EdgeColoring col = derived_coloring(TreeShape{k, h}, seq);
  if (!find_repetitive_path(col)) return true;
  return find_k_bad(seq, k).has_value();
}

EdgeColoring corollary_small_h(int k, int h) {
  if (k < 1) throw std::invalid_argument("corollary_small_h: k must be >= 1");
  if (h < 3) throw std::invalid_argument("corollary_small_h: h must be >= 3");
  int n = ((h + 1) * k + 1) / 2;
  return derived_coloring(TreeShape{k, h}, s_n_c(n, n - k));
}

EdgeColoring extend_t24_example() {
  EdgeColoring base = derived_coloring(TreeShape{2, 3}, s_n_c(4, 2));
  TreeShape shape{2, 4};
  EdgeColoring col;
  col.shape = shape;
  col.palette_size = 5;
  col.colors.assign((size_t)shape.vertex_count() - 1, 0);
  std::copy(base.colors.begin(), base.colors.end(), col.colors.begin());
  static const int rest[8] = {1, 1, 3, 4, 2, 3, 2, 3};
  for (long long v = 8; v <= 15; v++) {
    col.colors[(size_t)(2 * v) - 2] = 5;                     // left child
    col.colors[(size_t)(2 * v + 1) - 2] = rest[v - 8];       // right child
  }
  return col;
}

int construction_upper_bound(int k, int h) {
  if (h == 1) return k;
  if (h == 2) return 3 * k / 2 + 1;
  return std::min(((h + 1) * k + 1) / 2, 3 * k + 1);
}

}  // namespace nonrep
