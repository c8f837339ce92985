#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonrep/io.hpp"
#include "nonrep/kspecial.hpp"
#include "nonrep/sequence.hpp"
#include "nonrep/tree.hpp"

using namespace nonrep;
using nlohmann::json;

// 0 ok / clean, 1 violation found, 2 usage or parse error, 3 budget or cancel.
namespace {

std::atomic<bool> g_cancel{false};

void on_sigint(int) { g_cancel.store(true); }

// Wall-clock cap for one command: trips the shared cancel flag.
struct Watchdog {
  std::thread t;
  std::atomic<bool> stop{false};

  void arm(double seconds) {
    if (seconds < 0) return;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(seconds));
    t = std::thread([this, deadline] {
      while (!stop.load()) {
        if (std::chrono::steady_clock::now() >= deadline) {
          g_cancel.store(true);
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
    });
  }
  ~Watchdog() {
    stop.store(true);
    if (t.joinable()) t.join();
  }
};

double parse_budget(const std::string& text) {
  if (text.empty()) return -1;
  if (text == "long") return 3600;
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--budget", "expected seconds or 'long', got '" + text + "'");
}

int default_threads() {
  if (const char* env = std::getenv("NONREP_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return read_file(path);
}

// Stdout by default; --out redirects to a file, --tee does both.
void emit(const std::string& payload, const std::string& out, bool tee) {
  if (out.empty() || tee) std::cout << payload;
  if (!out.empty()) write_file(out, payload);
}

std::string witness_indices(const KBadWitness& w) {
  std::string s;
  for (size_t i = 0; i < w.indices.size(); i++) {
    if (i) s += ' ';
    s += std::to_string(w.indices[i]);
  }
  return s;
}

struct OutputFlags {
  std::string format = "text";
  std::string out;
  bool tee = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", out, "write output to this file instead of stdout");
    cmd->add_flag("--tee", tee, "with --out, also write to stdout");
  }
};

std::string coloring_payload(const EdgeColoring& col, const OutputFlags& of) {
  return of.format == "json" ? coloring_to_json(col) + "\n" : format_coloring(col);
}

std::string chromatic_text(const ChromaticReport& r) {
  std::ostringstream out;
  if (r.pi_prime >= 0)
    out << "pi_prime=" << r.pi_prime << "\n";
  else if (r.mode == SearchMode::count_classes)
    out << "palette=" << r.palette << " classes=" << r.class_count << "\n";
  else if (r.exhaustive)
    out << "palette=" << r.palette << " exists=" << (r.exists ? "yes" : "no") << "\n";
  else
    out << "partial: lower=" << r.lower_bound << " upper=" << r.upper_bound << "\n";
  out << "nodes=" << r.nodes_explored << " exhaustive=" << (r.exhaustive ? "yes" : "no") << "\n";
  if (r.witness_coloring) out << format_coloring(*r.witness_coloring);
  return out.str();
}

// ---- seq ----

int run_seq_gen(const std::string& variant, int length, int k, int n, int c, int w,
                const std::string& in, const OutputFlags& of) {
  Sequence seq;
  if (variant == "squarefree") {
    if (length < 0) throw std::invalid_argument("--length is required");
    seq = thue_squarefree(length);
  } else if (variant == "palfree") {
    if (length < 0) throw std::invalid_argument("--length is required");
    seq = palindrome_free_thue(length);
  } else if (variant == "ababab") {
    if (length < 0) throw std::invalid_argument("--length is required");
    seq = thue_aba_bab_free(length);
  } else if (variant == "3k1") {
    if (length < 0) throw std::invalid_argument("--length is required");
    if (k < 1) throw std::invalid_argument("--k is required for variant 3k1");
    seq = construct_3k_plus_1(k, length);
  } else if (variant == "3k3") {
    if (length < 0) throw std::invalid_argument("--length is required");
    if (k < 1) throw std::invalid_argument("--k is required for variant 3k3");
    seq = corollary_3k3_sequence(k, length);
  } else if (variant == "snc") {
    seq = s_n_c(n, c);
  } else {  // expand
    if (w < 1) throw std::invalid_argument("--w is required for variant expand");
    seq = block_expand(parse_sequence(read_input(in)), w);
    if (length >= 0 && length < seq.length()) {
      seq.symbols.resize((size_t)length);
    }
  }
  emit(of.format == "json" ? sequence_to_json(seq) + "\n" : format_sequence(seq) + "\n", of.out,
       of.tee);
  return 0;
}

int run_seq_check(const std::string& in, bool squares, bool palindromes, int kspecial,
                  const OutputFlags& of) {
  if (!squares && !palindromes && kspecial < 1)
    throw std::invalid_argument("no checks requested: pass --squares, --palindromes, or --kspecial K");
  Sequence seq = parse_sequence(read_input(in));
  bool violation = false;
  std::ostringstream text;
  std::ostringstream json;
  json << "{";
  bool first = true;
  auto field = [&](const std::string& name, const std::string& value) {
    if (!first) json << ",";
    first = false;
    json << "\"" << name << "\":" << value;
  };
  if (squares) {
    auto sq = find_square(seq);
    if (sq) {
      violation = true;
      text << "square: start=" << sq->start + 1 << " half_length=" << sq->half_length << "\n";
      field("square", "{\"start\":" + std::to_string(sq->start + 1) +
                          ",\"half_length\":" + std::to_string(sq->half_length) + "}");
    } else {
      text << "squares: none\n";
      field("square", "null");
    }
  }
  if (palindromes) {
    auto pal = find_palindrome(seq);
    if (pal) {
      violation = true;
      text << "palindrome: start=" << pal->first + 1 << " length=" << pal->second << "\n";
      field("palindrome", "{\"start\":" + std::to_string(pal->first + 1) +
                              ",\"length\":" + std::to_string(pal->second) + "}");
    } else {
      text << "palindromes: none\n";
      field("palindrome", "null");
    }
  }
  if (kspecial >= 1) {
    auto bad = find_k_bad(seq, kspecial);
    if (bad) {
      violation = true;
      text << "k-bad witness: " << witness_indices(*bad) << " (valley " << bad->valley << ")\n";
      field("kbad", kbad_witness_to_json(*bad));
    } else {
      text << "kspecial " << kspecial << ": yes\n";
      field("kbad", "null");
    }
  }
  json << "}";
  emit(of.format == "json" ? json.str() + "\n" : text.str(), of.out, of.tee);
  return violation ? 1 : 0;
}

int run_seq_fk(int k, int n, int cap, int threads, const std::string& checkpoint, bool resume,
               const OutputFlags& of) {
  FkOptions opt;
  opt.length_cap = cap;
  opt.threads = threads;
  opt.checkpoint_path = checkpoint;
  opt.resume = resume;
  opt.cancel = &g_cancel;
  FkReport report = search_fk(k, n, opt);
  if (of.format == "json") {
    emit(fk_report_to_json(report) + "\n", of.out, of.tee);
  } else {
    std::ostringstream text;
    text << "k=" << report.k << " n=" << report.n << " max_length=" << report.max_length
         << " exhaustive=" << (report.exhaustive ? "yes" : "no")
         << " nodes=" << report.nodes_explored << " witnesses=" << report.witnesses.size() << "\n";
    for (const Sequence& wtn : report.witnesses) text << format_sequence(wtn) << "\n";
    emit(text.str(), of.out, of.tee);
  }
  return g_cancel.load() ? 3 : 0;
}

// ---- tree ----

int run_tree_derive(int k, int h, const std::string& seq_path, const OutputFlags& of) {
  Sequence seq = parse_sequence(read_input(seq_path));
  EdgeColoring col = derived_coloring(TreeShape{k, h}, seq);
  emit(coloring_payload(col, of), of.out, of.tee);
  return 0;
}

int run_tree_verify(const std::string& coloring_path, const OutputFlags& of) {
  EdgeColoring col = parse_coloring(read_input(coloring_path));
  auto witness = find_repetitive_path(col);
  if (!witness) {
    emit(of.format == "json" ? "{\"repetitive\":null}\n" : "nonrepetitive\n", of.out, of.tee);
    return 0;
  }
  if (of.format == "json") {
    emit("{\"repetitive\":" + path_witness_to_json(*witness) + "}\n", of.out, of.tee);
  } else {
    std::ostringstream text;
    text << "repetitive path: u=" << witness->u << " v=" << witness->v << " colors=";
    for (size_t i = 0; i < witness->color_word.size(); i++) {
      if (i) text << ' ';
      text << witness->color_word[i];
    }
    text << "\n";
    emit(text.str(), of.out, of.tee);
  }
  return 1;
}

int run_tree_pi(int k, int h, int palette, bool count_classes, const std::string& checkpoint,
                bool resume, const OutputFlags& of) {
  TreeShape shape{k, h};
  ChromaticOptions opt;
  opt.cancel = &g_cancel;
  ChromaticReport report;
  if (palette >= 1) {
    report = chromatic_index_exact(shape, palette,
                                   count_classes ? SearchMode::count_classes : SearchMode::exists,
                                   opt);
  } else {
    if (count_classes) throw std::invalid_argument("--count-classes requires --palette");
    opt.checkpoint_path = checkpoint;
    opt.resume = resume;
    report = compute_pi_prime(shape, opt);
  }
  emit(of.format == "json" ? chromatic_report_to_json(report) + "\n" : chromatic_text(report),
       of.out, of.tee);
  return report.exhaustive ? 0 : 3;
}

// ---- table ----

struct Cell {
  std::string value;
  std::string status;
  std::string provenance;
};

std::string upper_construction_name(int k, int h) {
  if (h == 1) return "star";
  if (h == 2) return "sv";
  return ((h + 1) * k + 1) / 2 <= 3 * k + 1 ? "derived" : "blocks";
}

Cell table_cell(int k, int h, double cell_budget, int& run_lower) {
  int lower = (h >= 2) ? k + 1 : k;
  if (h >= 3) lower = std::max(lower, (161 * k + 99) / 100);
  lower = std::max(lower, run_lower);
  int upper = construction_upper_bound(k, h);
  std::string cname = upper_construction_name(k, h);
  if (lower >= upper) {
    run_lower = upper;
    return {std::to_string(upper), "exact", cname};
  }
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(cell_budget));
  for (int q = lower; q < upper; q++) {
    ChromaticOptions opt;
    opt.cancel = &g_cancel;
    opt.budget_seconds =
        std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count();
    if (opt.budget_seconds <= 0 || g_cancel.load())
      return {std::to_string(q) + "," + std::to_string(upper), "bounds", cname};
    ChromaticReport step = chromatic_index_exact(TreeShape{k, h}, q, SearchMode::exists, opt);
    if (step.exists) {
      run_lower = q;
      return {std::to_string(q), "exact", "search"};
    }
    if (!step.exhaustive)
      return {std::to_string(q) + "," + std::to_string(upper), "bounds", cname};
  }
  run_lower = upper;
  return {std::to_string(upper), "exact", cname};
}

int run_table(int max_k, int max_h, double cell_budget, const OutputFlags& of) {
  bool as_json = of.format == "json";
  json rows = json::array();
  std::ostringstream out;
  out << "k\th\tvalue\tstatus\tprovenance\n";
  // TSV streams row by row; JSON is one document, so it lands only at the end
  bool streaming = !as_json && (of.out.empty() || of.tee);
  if (streaming) std::cout << "k\th\tvalue\tstatus\tprovenance" << std::endl;
  bool cancelled = false;
  for (int k = 1; k <= max_k && !cancelled; k++) {
    int run_lower = 1;
    for (int h = 1; h <= max_h && !cancelled; h++) {
      Cell cell = table_cell(k, h, cell_budget, run_lower);
      std::ostringstream row;
      row << k << '\t' << h << '\t' << cell.value << '\t' << cell.status << '\t'
          << cell.provenance << '\n';
      out << row.str();
      rows.push_back(json{{"k", k},
                          {"h", h},
                          {"value", cell.value},
                          {"status", cell.status},
                          {"provenance", cell.provenance}});
      if (streaming) std::cout << row.str() << std::flush;
      cancelled = g_cancel.load();
    }
  }
  if (as_json)
    emit(rows.dump() + "\n", of.out, of.tee);
  else if (!of.out.empty())
    write_file(of.out, out.str());
  return cancelled ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);
  CLI::App app{"nonrepetitive sequences and tree edge colorings"};
  app.require_subcommand(1);

  std::string budget_text;
  Watchdog watchdog;

  // seq
  CLI::App* seq = app.add_subcommand("seq", "sequence generators and checkers");
  seq->require_subcommand(1);

  CLI::App* gen = seq->add_subcommand("gen", "emit a sequence");
  std::string gen_variant;
  int gen_length = -1, gen_k = 0, gen_n = 0, gen_c = -1, gen_w = 0;
  std::string gen_in;
  OutputFlags gen_of;
  gen->add_option("--variant", gen_variant, "what to generate")
      ->required()
      ->check(CLI::IsMember({"squarefree", "palfree", "ababab", "3k1", "3k3", "snc", "expand"}));
  gen->add_option("--length", gen_length, "output length");
  gen->add_option("--k", gen_k, "parameter k (3k1, 3k3)");
  gen->add_option("--n", gen_n, "parameter n (snc)");
  gen->add_option("--c", gen_c, "parameter c (snc)");
  gen->add_option("--w", gen_w, "block width (expand)");
  gen->add_option("--in", gen_in, "input sequence file for expand ('-' = stdin)");
  gen_of.attach(gen);

  CLI::App* check = seq->add_subcommand("check", "check a sequence, reporting witnesses");
  std::string check_in;
  bool check_squares = false, check_palindromes = false;
  int check_kspecial = 0;
  OutputFlags check_of;
  check->add_option("--in", check_in, "input file (default stdin)");
  check->add_flag("--squares", check_squares, "look for a square factor");
  check->add_flag("--palindromes", check_palindromes, "look for a palindrome factor");
  check->add_option("--kspecial", check_kspecial, "check k-specialness for this k");
  check_of.attach(check);

  CLI::App* fk = seq->add_subcommand("fk", "maximal k-special length on n symbols");
  int fk_k = 0, fk_n = 0, fk_cap = -1, fk_threads = default_threads();
  std::string fk_checkpoint;
  bool fk_resume = false;
  OutputFlags fk_of;
  fk->add_option("--k", fk_k, "parameter k")->required();
  fk->add_option("--n", fk_n, "alphabet size")->required();
  fk->add_option("--cap", fk_cap, "length cap (default 8k+8)");
  fk->add_option("--threads", fk_threads, "worker threads (default NONREP_THREADS or 1)");
  fk->add_option("--checkpoint", fk_checkpoint, "checkpoint file");
  fk->add_flag("--resume", fk_resume, "reuse completed branches from the checkpoint");
  fk->add_option("--budget", budget_text, "wall-clock cap in seconds, or 'long'");
  fk_of.attach(fk);

  // tree
  CLI::App* tree = app.add_subcommand("tree", "tree colorings");
  tree->require_subcommand(1);

  CLI::App* derive = tree->add_subcommand("derive", "color a tree from a sequence");
  // --h (height) would shadow the short help flag, so these subcommands keep --help only
  derive->set_help_flag("--help", "print help and exit");
  int der_k = 0, der_h = 0;
  std::string der_seq;
  OutputFlags der_of;
  derive->add_option("--k", der_k, "arity")->required();
  derive->add_option("--h", der_h, "height")->required();
  derive->add_option("--seq", der_seq, "sequence file ('-' = stdin)")->required();
  der_of.attach(derive);

  CLI::App* verify = tree->add_subcommand("verify", "check a coloring for repetitive paths");
  std::string ver_coloring;
  OutputFlags ver_of;
  verify->add_option("--coloring", ver_coloring, "coloring file ('-' = stdin)")->required();
  ver_of.attach(verify);

  CLI::App* pi = tree->add_subcommand("pi", "Thue chromatic index");
  pi->set_help_flag("--help", "print help and exit");
  int pi_k = 0, pi_h = 0, pi_palette = 0;
  bool pi_count = false, pi_resume = false;
  std::string pi_checkpoint;
  OutputFlags pi_of;
  pi->add_option("--k", pi_k, "arity")->required();
  pi->add_option("--h", pi_h, "height")->required();
  pi->add_option("--palette", pi_palette, "search this palette only");
  pi->add_flag("--count-classes", pi_count, "count color classes (requires --palette)");
  pi->add_option("--budget", budget_text, "wall-clock cap in seconds, or 'long'");
  pi->add_option("--checkpoint", pi_checkpoint, "checkpoint file (palette sweep)");
  pi->add_flag("--resume", pi_resume, "reuse completed palettes from the checkpoint");
  pi_of.attach(pi);

  CLI::App* sv = tree->add_subcommand("sv", "explicit height-2 coloring");
  int sv_k = 0;
  OutputFlags sv_of;
  sv->add_option("--k", sv_k, "arity")->required();
  sv_of.attach(sv);

  CLI::App* t24 = tree->add_subcommand("t24", "explicit 5-color T_{2,4} coloring");
  OutputFlags t24_of;
  t24_of.attach(t24);

  // table
  CLI::App* table = app.add_subcommand("table", "pi' summary table");
  int table_max_k = 0, table_max_h = 0;
  std::string table_budget_text;
  OutputFlags table_of;
  table->add_option("--max-k", table_max_k, "largest arity")->required();
  table->add_option("--max-h", table_max_h, "largest height")->required();
  table->add_option("--budget", table_budget_text, "per-cell search budget in seconds, or 'long'");
  table_of.attach(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!budget_text.empty()) watchdog.arm(parse_budget(budget_text));
    if (gen->parsed())
      return run_seq_gen(gen_variant, gen_length, gen_k, gen_n, gen_c, gen_w, gen_in, gen_of);
    if (check->parsed())
      return run_seq_check(check_in, check_squares, check_palindromes, check_kspecial, check_of);
    if (fk->parsed()) return run_seq_fk(fk_k, fk_n, fk_cap, fk_threads, fk_checkpoint, fk_resume, fk_of);
    if (derive->parsed()) return run_tree_derive(der_k, der_h, der_seq, der_of);
    if (verify->parsed()) return run_tree_verify(ver_coloring, ver_of);
    if (pi->parsed())
      return run_tree_pi(pi_k, pi_h, pi_palette, pi_count, pi_checkpoint, pi_resume, pi_of);
    if (sv->parsed()) {
      emit(coloring_payload(sv_coloring_h2(sv_k), sv_of), sv_of.out, sv_of.tee);
      return 0;
    }
    if (t24->parsed()) {
      emit(coloring_payload(extend_t24_example(), t24_of), t24_of.out, t24_of.tee);
      return 0;
    }
    if (table->parsed()) {
      double cell_budget = table_budget_text.empty() ? 60.0 : parse_budget(table_budget_text);
      return run_table(table_max_k, table_max_h, cell_budget, table_of);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
