#include "nonrep/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nonrep {

using json = nlohmann::json;

std::string format_sequence(const Sequence& seq) {
  std::string out;
  for (int i = 0; i < seq.length(); i++) {
    if (i) out += ' ';
    out += std::to_string(seq.symbols[(size_t)i] + 1);
  }
  return out;
}

Sequence parse_sequence(const std::string& text) {
  Sequence seq;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int sym;
    if (tok == "a")
      sym = 1;
    else if (tok == "b")
      sym = 2;
    else if (tok == "c")
      sym = 3;
    else {
      size_t used = 0;
      try {
        sym = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_sequence: bad token '" + tok + "'");
      }
      if (used != tok.size() || sym < 1)
        throw std::invalid_argument("parse_sequence: bad token '" + tok + "'");
    }
    seq.symbols.push_back(sym - 1);
    seq.alphabet_size = std::max(seq.alphabet_size, sym);
  }
  return seq;
}

static std::vector<int> one_based(const std::vector<int>& symbols) {
  std::vector<int> out(symbols.size());
  for (size_t i = 0; i < symbols.size(); i++) out[i] = symbols[i] + 1;
  return out;
}

std::string sequence_to_json(const Sequence& seq) {
  return json{{"alphabet", seq.alphabet_size}, {"symbols", one_based(seq.symbols)}}.dump();
}

Sequence sequence_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sequence_from_json: ") + e.what());
  }
  Sequence seq;
  seq.alphabet_size = j.at("alphabet").get<int>();
  for (int sym : j.at("symbols").get<std::vector<int>>()) {
    if (sym < 1 || sym > seq.alphabet_size)
      throw std::invalid_argument("sequence_from_json: symbol " + std::to_string(sym) +
                                  " outside 1.." + std::to_string(seq.alphabet_size));
    seq.symbols.push_back(sym - 1);
  }
  return seq;
}

std::string format_coloring(const EdgeColoring& coloring) {
  std::ostringstream out;
  out << coloring.shape.k << ' ' << coloring.shape.h << ' ' << coloring.palette_size << '\n';
  for (size_t i = 0; i < coloring.colors.size(); i++)
    out << i + 2 << ' ' << coloring.colors[i] << '\n';
  return out.str();
}

std::string coloring_to_json(const EdgeColoring& coloring) {
  return json{{"k", coloring.shape.k},
              {"h", coloring.shape.h},
              {"palette", coloring.palette_size},
              {"colors", coloring.colors}}
      .dump();
}

static EdgeColoring coloring_shell(int k, int h, int palette) {
  if (k < 1 || h < 1) throw std::invalid_argument("parse_coloring: need k >= 1 and h >= 1");
  EdgeColoring col;
  col.shape = TreeShape{k, h};
  col.palette_size = palette;
  col.colors.assign((size_t)col.shape.vertex_count() - 1, 0);
  return col;
}

EdgeColoring parse_coloring(const std::string& text) {
  size_t at = text.find_first_not_of(" \t\r\n");
  if (at == std::string::npos) throw std::invalid_argument("parse_coloring: empty input");
  if (text[at] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("parse_coloring: ") + e.what());
    }
    EdgeColoring col = coloring_shell(j.at("k").get<int>(), j.at("h").get<int>(),
                                      j.at("palette").get<int>());
    auto colors = j.at("colors").get<std::vector<int>>();
    if (colors.size() != col.colors.size())
      throw std::invalid_argument("parse_coloring: expected " + std::to_string(col.colors.size()) +
                                  " colors, got " + std::to_string(colors.size()));
    col.colors = std::move(colors);
    return col;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  EdgeColoring col;
  bool have_header = false;
  while (std::getline(in, line)) {
    lineno++;
    std::istringstream ls(line);
    if (!have_header) {
      int k, h, palette;
      if (!(ls >> k >> h >> palette))
        throw std::invalid_argument("parse_coloring: line 1: expected 'k h palette'");
      col = coloring_shell(k, h, palette);
      have_header = true;
      continue;
    }
    long long v;
    int c;
    if (!(ls >> v)) continue;  // blank line
    if (!(ls >> c))
      throw std::invalid_argument("parse_coloring: line " + std::to_string(lineno) +
                                  ": expected 'vertex color'");
    if (v < 2 || (size_t)v - 2 >= col.colors.size())
      throw std::invalid_argument("parse_coloring: line " + std::to_string(lineno) + ": vertex " +
                                  std::to_string(v) + " out of range");
    col.colors[(size_t)v - 2] = c;
  }
  if (!have_header) throw std::invalid_argument("parse_coloring: empty input");
  return col;
}

std::string fk_report_to_json(const FkReport& report) {
  json ws = json::array();
  for (const Sequence& w : report.witnesses) ws.push_back(one_based(w.symbols));
  return json{{"k", report.k},
              {"n", report.n},
              {"max_length", report.max_length},
              {"exhaustive", report.exhaustive},
              {"nodes_explored", report.nodes_explored},
              {"witnesses", ws}}
      .dump();
}

FkReport fk_report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("fk_report_from_json: ") + e.what());
  }
  FkReport report;
  report.k = j.at("k").get<int>();
  report.n = j.at("n").get<int>();
  report.max_length = j.at("max_length").get<int>();
  report.exhaustive = j.at("exhaustive").get<bool>();
  report.nodes_explored = j.at("nodes_explored").get<long long>();
  for (const auto& arr : j.at("witnesses")) {
    Sequence w;
    w.alphabet_size = report.n;
    for (int sym : arr.get<std::vector<int>>()) w.symbols.push_back(sym - 1);
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

std::string chromatic_report_to_json(const ChromaticReport& report) {
  json j{{"k", report.shape.k},
         {"h", report.shape.h},
         {"palette", report.palette},
         {"mode", report.mode == SearchMode::exists ? "exists" : "count_classes"},
         {"exists", report.exists},
         {"class_count", report.class_count},
         {"nodes_explored", report.nodes_explored},
         {"exhaustive", report.exhaustive},
         {"pi_prime", report.pi_prime},
         {"lower_bound", report.lower_bound},
         {"upper_bound", report.upper_bound}};
  if (report.witness_coloring)
    j["witness"] = json{{"palette", report.witness_coloring->palette_size},
                        {"colors", report.witness_coloring->colors}};
  else
    j["witness"] = nullptr;
  return j.dump();
}

ChromaticReport chromatic_report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("chromatic_report_from_json: ") + e.what());
  }
  ChromaticReport report;
  report.shape = TreeShape{j.at("k").get<int>(), j.at("h").get<int>()};
  report.palette = j.at("palette").get<int>();
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "exists")
    report.mode = SearchMode::exists;
  else if (mode == "count_classes")
    report.mode = SearchMode::count_classes;
  else
    throw std::invalid_argument("chromatic_report_from_json: bad mode '" + mode + "'");
  report.exists = j.at("exists").get<bool>();
  report.class_count = j.at("class_count").get<long long>();
  report.nodes_explored = j.at("nodes_explored").get<long long>();
  report.exhaustive = j.at("exhaustive").get<bool>();
  report.pi_prime = j.at("pi_prime").get<int>();
  report.lower_bound = j.at("lower_bound").get<int>();
  report.upper_bound = j.at("upper_bound").get<int>();
  if (!j.at("witness").is_null()) {
    EdgeColoring col;
    col.shape = report.shape;
    col.palette_size = j["witness"].at("palette").get<int>();
    col.colors = j["witness"].at("colors").get<std::vector<int>>();
    report.witness_coloring = std::move(col);
  }
  return report;
}

std::string path_witness_to_json(const PathWitness& w) {
  return json{{"u", w.u},
              {"v", w.v},
              {"color_word", w.color_word},
              {"square", {{"start", w.square.start}, {"half_length", w.square.half_length}}}}
      .dump();
}

std::string kbad_witness_to_json(const KBadWitness& w) {
  return json{{"indices", w.indices}, {"valley", w.valley}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace nonrep
