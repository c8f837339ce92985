#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "nonrep/tree.hpp"

namespace nonrep {

namespace {

using json = nlohmann::json;
using clock_type = std::chrono::steady_clock;

struct SearchBudget {
  clock_type::time_point deadline;
  bool limited = false;
  std::atomic<bool>* cancel = nullptr;
  bool tripped = false;

  void init(double seconds, std::atomic<bool>* cancel_flag) {
    cancel = cancel_flag;
    if (seconds >= 0) {
      limited = true;
      deadline = clock_type::now() + std::chrono::duration_cast<clock_type::duration>(
                                         std::chrono::duration<double>(seconds));
    }
  }
  bool out() {
    if (tripped) return true;
    if ((cancel && cancel->load(std::memory_order_relaxed)) ||
        (limited && clock_type::now() >= deadline))
      tripped = true;
    return tripped;
  }
};

// True iff some path with one endpoint at the newly colored child v has a
// square color word. Ancestors of v and every vertex below a smaller label
// are already colored, so these are exactly the new whole-word checks.
bool creates_square(const EdgeColoring& col, long long v) {
  const TreeShape& t = col.shape;
  int dv = t.depth(v);
  // Collect v's edge-color chain up to the root once.
  std::vector<int> up;       // colors from v upward
  std::vector<long long> anc;  // v, parent(v), ...
  {
    long long x = v;
    while (x > 1) {
      up.push_back(col.color_of(x));
      anc.push_back(x);
      x = t.parent(x);
    }
    anc.push_back(1);
  }
  std::vector<int> w;
  for (long long u = 1; u < v; u++) {
    // path word u -> v
    w.clear();
    long long x = u;
    int dx = t.depth(x);
    while (dx > dv) {
      w.push_back(col.color_of(x));
      x = t.parent(x);
      dx--;
    }
    // climb v's side implicitly: find how far up the chain x meets it
    int vi = dv - dx;  // anc[vi] has depth dx
    while (x != anc[vi]) {
      w.push_back(col.color_of(x));
      x = t.parent(x);
      vi++;
    }
    size_t left = w.size();
    size_t total = left + vi;
    if (total % 2 != 0 || total == 0) continue;
    size_t half = total / 2;
    // word = w (u up to lca) followed by reversed chain up[vi-1] .. up[0]
    auto at = [&](size_t i) -> int {
      return i < left ? w[i] : up[(size_t)vi - 1 - (i - left)];
    };
    bool square = true;
    for (size_t i = 0; i < half; i++)
      if (at(i) != at(i + half)) {
        square = false;
        break;
      }
    if (square) return true;
  }
  return false;
}

// Canonical key of a complete coloring under sibling permutations and one
// fixed color relabeling: sorted child blocks, bottom-up.
std::vector<int> encode_tree(const EdgeColoring& col, const std::vector<int>& relabel) {
  const TreeShape& t = col.shape;
  long long n = t.vertex_count();
  std::vector<std::vector<int>> enc((size_t)n + 1);
  for (long long v = n; v >= 2; v--) {
    std::vector<int> block;
    block.push_back(relabel[(size_t)col.color_of(v)]);
    if (!t.is_leaf(v)) {
      std::vector<std::vector<int>> kids;
      for (long long c = t.first_child(v); c <= t.first_child(v) + t.k - 1; c++)
        kids.push_back(std::move(enc[(size_t)c]));
      std::sort(kids.begin(), kids.end());
      for (auto& kb : kids) block.insert(block.end(), kb.begin(), kb.end());
    }
    enc[(size_t)v] = std::move(block);
  }
  std::vector<std::vector<int>> tops;
  for (long long c = 2; c <= 1 + t.k; c++) tops.push_back(std::move(enc[(size_t)c]));
  std::sort(tops.begin(), tops.end());
  std::vector<int> key;
  for (auto& b : tops) key.insert(key.end(), b.begin(), b.end());
  return key;
}

std::vector<int> canonical_key(const EdgeColoring& col, int palette) {
  std::vector<int> perm(palette + 1);
  for (int i = 0; i <= palette; i++) perm[i] = i;
  std::vector<int> best;
  // Minimum over all color permutations; sibling permutations are absorbed
  // by the sorted child blocks.
  do {
    std::vector<int> key = encode_tree(col, perm);
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

struct ChromaticSearch {
  TreeShape shape;
  int palette;
  SearchMode mode;
  SearchBudget budget;
  long long n;
  EdgeColoring col;
  long long nodes = 0;
  bool aborted = false;
  std::optional<EdgeColoring> first_witness;
  std::set<std::vector<int>> classes;

  ChromaticSearch(const TreeShape& s, int p, SearchMode m) : shape(s), palette(p), mode(m) {
    n = shape.vertex_count();
    col.shape = shape;
    col.palette_size = palette;
    col.colors.assign((size_t)n - 1, 0);
  }

  // Returns true when exists-mode found a witness (stops the recursion).
  bool rec(long long v, int max_used) {
    if (v > n) {
      if (mode == SearchMode::exists) {
        first_witness = col;
        return true;
      }
      classes.insert(canonical_key(col, palette));
      return false;
    }
    bool first_in_group = shape.child_position(v) == 1;
    int lo = first_in_group ? 1 : col.color_of(v - 1) + 1;
    int hi = std::min(palette, max_used + 1);
    for (int c = lo; c <= hi; c++) {
      col.colors[(size_t)v - 2] = c;
      if (!creates_square(col, v)) {
        nodes++;
        if ((nodes & 4095) == 0 && budget.out()) {
          aborted = true;
          break;
        }
        if (rec(v + 1, std::max(max_used, c))) {
          col.colors[(size_t)v - 2] = 0;
          return true;
        }
        if (aborted) break;
      }
      col.colors[(size_t)v - 2] = 0;
    }
    col.colors[(size_t)v - 2] = 0;
    return false;
  }
};

EdgeColoring construction_witness(int k, int h) {
  if (h == 1) {
    TreeShape shape{k, 1};
    EdgeColoring col;
    col.shape = shape;
    col.palette_size = k;
    col.colors.resize(k);
    for (int i = 0; i < k; i++) col.colors[i] = i + 1;
    return col;
  }
  if (h == 2) return sv_coloring_h2(k);
  int small = ((h + 1) * k + 1) / 2;
  if (small <= 3 * k + 1) return corollary_small_h(k, h);
  return derived_coloring(TreeShape{k, h}, construct_3k_plus_1(k, k * h));
}

}  // namespace

ChromaticReport chromatic_index_exact(const TreeShape& shape, int palette, SearchMode mode,
                                      const ChromaticOptions& options) {
  if (palette < 1) throw std::invalid_argument("chromatic_index_exact: palette must be >= 1");
  if (mode == SearchMode::count_classes && palette > 8)
    throw std::invalid_argument("chromatic_index_exact: count_classes supports palette <= 8");
  ChromaticSearch search(shape, palette, mode);
  search.budget.init(options.budget_seconds, options.cancel);
  if (search.budget.out())
    search.aborted = true;
  else
    search.rec(2, 0);
  ChromaticReport report;
  report.shape = shape;
  report.palette = palette;
  report.mode = mode;
  report.nodes_explored = search.nodes;
  report.exhaustive = !search.aborted;
  report.exists = search.first_witness.has_value() ||
                  (mode == SearchMode::count_classes && !search.classes.empty());
  report.witness_coloring = std::move(search.first_witness);
  if (mode == SearchMode::count_classes)
    report.class_count = (long long)search.classes.size();
  return report;
}

ChromaticReport compute_pi_prime(const TreeShape& shape, const ChromaticOptions& options) {
  int k = shape.k, h = shape.h;
  int upper = construction_upper_bound(k, h);
  int lower = (h >= 2) ? k + 1 : k;

  std::map<int, json> done;
  bool checkpointing = !options.checkpoint_path.empty();
  if (options.resume && checkpointing) {
    std::ifstream in(options.checkpoint_path);
    std::string line;
    bool header_seen = false;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      json frame = json::parse(line);
      if (!header_seen) {
        if (frame.value("k", -1) != k || frame.value("h", -1) != h)
          throw std::invalid_argument("compute_pi_prime: checkpoint is for a different shape");
        header_seen = true;
        continue;
      }
      done[frame.at("palette").get<int>()] = frame;
    }
  }
  std::ofstream ckpt;
  if (checkpointing) {
    bool fresh = !options.resume || done.empty();
    ckpt.open(options.checkpoint_path, fresh ? std::ios::trunc : std::ios::app);
    if (!ckpt)
      throw std::runtime_error("compute_pi_prime: cannot open checkpoint file " + options.checkpoint_path);
    if (fresh) ckpt << json{{"k", k}, {"h", h}}.dump() << "\n" << std::flush;
  }

  ChromaticReport report;
  report.shape = shape;
  report.mode = SearchMode::exists;
  report.lower_bound = lower;
  report.upper_bound = upper;
  for (int q = lower; q <= upper; q++) {
    report.lower_bound = q;
    if (auto it = done.find(q); it != done.end()) {
      const json& frame = it->second;
      report.nodes_explored += frame.at("nodes").get<long long>();
      if (frame.at("exists").get<bool>()) {
        EdgeColoring col;
        col.shape = shape;
        col.palette_size = q;
        col.colors = frame.at("colors").get<std::vector<int>>();
        report.witness_coloring = std::move(col);
        report.pi_prime = q;
        report.palette = q;
        report.exists = true;
        report.exhaustive = true;
        return report;
      }
      continue;
    }
    if (q == upper) {
      // All smaller palettes proved empty; the construction supplies the witness.
      EdgeColoring col = construction_witness(k, h);
      if (!find_repetitive_path(col)) {
        if (checkpointing)
          ckpt << json{{"palette", q}, {"exists", true}, {"nodes", 0}, {"colors", col.colors}}.dump()
               << "\n" << std::flush;
        report.witness_coloring = std::move(col);
        report.pi_prime = q;
        report.palette = q;
        report.exists = true;
        report.exhaustive = true;
        return report;
      }
      // Fall through to an actual search if the construction ever failed.
    }
    ChromaticOptions sub = options;
    sub.checkpoint_path.clear();
    ChromaticReport step = chromatic_index_exact(shape, q, SearchMode::exists, sub);
    report.nodes_explored += step.nodes_explored;
    if (!step.exhaustive && !step.exists) {
      report.exhaustive = false;  // bracket [q, upper] remains open
      return report;
    }
    if (step.exists) {
      if (checkpointing)
        ckpt << json{{"palette", q},
                     {"exists", true},
                     {"nodes", step.nodes_explored},
                     {"colors", step.witness_coloring->colors}}
                    .dump()
             << "\n" << std::flush;
      report.witness_coloring = std::move(step.witness_coloring);
      report.pi_prime = q;
      report.palette = q;
      report.exists = true;
      report.exhaustive = true;
      return report;
    }
    if (checkpointing)
      ckpt << json{{"palette", q}, {"exists", false}, {"nodes", step.nodes_explored}}.dump() << "\n"
           << std::flush;
  }
  // Unreachable: the construction at `upper` always succeeds.
  report.exhaustive = false;
  return report;
}

}  // namespace nonrep
