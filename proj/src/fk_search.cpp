#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "nonrep/kspecial.hpp"

namespace nonrep {

namespace {

using json = nlohmann::json;
using clock_type = std::chrono::steady_clock;

struct Budget {
  clock_type::time_point deadline;
  bool limited = false;
  std::atomic<bool>* cancel = nullptr;
  std::atomic<bool> tripped{false};

  void init(double seconds, std::atomic<bool>* cancel_flag) {
    cancel = cancel_flag;
    if (seconds >= 0) {
      limited = true;
      deadline = clock_type::now() + std::chrono::duration_cast<clock_type::duration>(
                                         std::chrono::duration<double>(seconds));
    }
  }
  bool out() {
    if (tripped.load(std::memory_order_relaxed)) return true;
    if ((cancel && cancel->load(std::memory_order_relaxed)) ||
        (limited && clock_type::now() >= deadline)) {
      tripped.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }
};

// Result of exploring one subtree of the search.
struct PartialResult {
  int max_length = 0;
  std::vector<std::vector<int>> witnesses;  // 0-based symbol words
  long long nodes = 0;
  bool capped = false;
  bool complete = true;

  void absorb_word(const std::vector<int>& w) {
    int len = (int)w.size();
    if (len > max_length) {
      max_length = len;
      witnesses.clear();
    }
    if (len == max_length && len > 0) witnesses.push_back(w);
  }
  void merge(const PartialResult& o) {
    nodes += o.nodes;
    capped = capped || o.capped;
    complete = complete && o.complete;
    if (o.max_length > max_length) {
      max_length = o.max_length;
      witnesses = o.witnesses;
    } else if (o.max_length == max_length) {
      witnesses.insert(witnesses.end(), o.witnesses.begin(), o.witnesses.end());
    }
  }
};

// Depth-first extension of `word`, visiting only words strictly longer than
// the entry length; the entry word itself is recorded by the caller.
void explore(Sequence& word, int k, int n, int cap, Budget& budget, PartialResult& res) {
  if ((int)word.symbols.size() >= cap) {
    res.capped = true;
    return;
  }
  int max_used = -1;
  for (int t : word.symbols) max_used = std::max(max_used, t);
  int hi = std::min(max_used + 1, n - 1);
  for (int v = 0; v <= hi; v++) {
    word.symbols.push_back(v);
    if (!has_k_bad_ending_at(word, k, word.length())) {
      res.nodes++;
      res.absorb_word(word.symbols);
      if ((res.nodes & 1023) == 0 && budget.out()) {
        res.complete = false;
        word.symbols.pop_back();
        return;
      }
      explore(word, k, n, cap, budget, res);
      if (!res.complete) {
        word.symbols.pop_back();
        return;
      }
    }
    word.symbols.pop_back();
  }
}

// Enumerate every valid word of length <= depth, recording each in `res` and
// collecting the words of length exactly depth as parallel tasks.
void enumerate_frontier(Sequence& word, int k, int n, int depth, PartialResult& res,
                        std::vector<std::vector<int>>& frontier) {
  if ((int)word.symbols.size() == depth) {
    frontier.push_back(word.symbols);
    return;
  }
  int max_used = -1;
  for (int t : word.symbols) max_used = std::max(max_used, t);
  int hi = std::min(max_used + 1, n - 1);
  for (int v = 0; v <= hi; v++) {
    word.symbols.push_back(v);
    if (!has_k_bad_ending_at(word, k, word.length())) {
      res.nodes++;
      res.absorb_word(word.symbols);
      enumerate_frontier(word, k, n, depth, res, frontier);
    }
    word.symbols.pop_back();
  }
}

std::vector<int> to_external(const std::vector<int>& w) {
  std::vector<int> out(w.size());
  for (size_t i = 0; i < w.size(); i++) out[i] = w[i] + 1;
  return out;
}

std::vector<int> to_internal(const std::vector<int>& w) {
  std::vector<int> out(w.size());
  for (size_t i = 0; i < w.size(); i++) out[i] = w[i] - 1;
  return out;
}

json partial_to_frame(const std::vector<int>& branch, const PartialResult& r) {
  json frame;
  frame["branch"] = to_external(branch);
  frame["max_length"] = r.max_length;
  frame["nodes"] = r.nodes;
  frame["capped"] = r.capped;
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_external(w));
  frame["witnesses"] = ws;
  return frame;
}

PartialResult frame_to_partial(const json& frame) {
  PartialResult r;
  r.max_length = frame.at("max_length").get<int>();
  r.nodes = frame.at("nodes").get<long long>();
  r.capped = frame.at("capped").get<bool>();
  for (const auto& w : frame.at("witnesses"))
    r.witnesses.push_back(to_internal(w.get<std::vector<int>>()));
  return r;
}

}  // namespace

FkReport search_fk(int k, int n, const FkOptions& options) {
  if (k < 1 || n < 1) throw std::invalid_argument("search_fk: need k >= 1 and n >= 1");
  int cap = options.length_cap > 0 ? options.length_cap : 8 * k + 8;
  int threads = std::max(1, options.threads);

  Budget budget;
  budget.init(options.budget_seconds, options.cancel);

  const int frontier_depth = std::min(6, cap);

  // Previously completed branches, when resuming.
  std::map<std::vector<int>, PartialResult> done;
  if (options.resume && !options.checkpoint_path.empty()) {
    std::ifstream in(options.checkpoint_path);
    std::string line;
    bool header_seen = false;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      json frame = json::parse(line);
      if (!header_seen) {
        if (frame.value("k", -1) != k || frame.value("n", -1) != n ||
            frame.value("cap", -1) != cap || frame.value("depth", -1) != frontier_depth)
          throw std::invalid_argument("search_fk: checkpoint parameters do not match this run");
        header_seen = true;
        continue;
      }
      done[to_internal(frame.at("branch").get<std::vector<int>>())] = frame_to_partial(frame);
    }
  }

  std::ofstream ckpt;
  std::mutex ckpt_mutex;
  bool checkpointing = !options.checkpoint_path.empty();
  if (checkpointing) {
    bool fresh = !options.resume || done.empty();
    ckpt.open(options.checkpoint_path, (options.resume && !done.empty()) ? std::ios::app : std::ios::trunc);
    if (!ckpt) throw std::runtime_error("search_fk: cannot open checkpoint file " + options.checkpoint_path);
    if (fresh)
      ckpt << json{{"k", k}, {"n", n}, {"cap", cap}, {"depth", frontier_depth}}.dump() << "\n" << std::flush;
  }

  // Phase 1: the frontier prefix, always serial and cheap.
  PartialResult total;
  Sequence word;
  word.alphabet_size = n;
  std::vector<std::vector<int>> frontier;
  enumerate_frontier(word, k, n, frontier_depth, total, frontier);

  // Phase 2: one task per frontier word, explored in parallel.
  std::vector<PartialResult> results(frontier.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    Sequence local;
    local.alphabet_size = n;
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= frontier.size()) return;
      auto it = done.find(frontier[i]);
      if (it != done.end()) {
        results[i] = it->second;
        continue;
      }
      if (budget.out()) {
        results[i].complete = false;
        continue;
      }
      local.symbols = frontier[i];
      explore(local, k, n, cap, budget, results[i]);
      if (checkpointing && results[i].complete) {
        std::lock_guard<std::mutex> lock(ckpt_mutex);
        ckpt << partial_to_frame(frontier[i], results[i]).dump() << "\n" << std::flush;
      }
    }
  };
  if (threads == 1 || frontier.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; t++) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : results) total.merge(r);

  FkReport report;
  report.k = k;
  report.n = n;
  report.max_length = total.max_length;
  report.nodes_explored = total.nodes;
  report.exhaustive = total.complete && !total.capped;
  std::sort(total.witnesses.begin(), total.witnesses.end());
  total.witnesses.erase(std::unique(total.witnesses.begin(), total.witnesses.end()),
                        total.witnesses.end());
  for (auto& w : total.witnesses) {
    Sequence s;
    s.alphabet_size = n;
    s.symbols = std::move(w);
    report.witnesses.push_back(std::move(s));
  }
  return report;
}

}  // namespace nonrep
