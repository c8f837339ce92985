#pragma once

#include <iosfwd>
#include <string>

#include "nonrep/kspecial.hpp"
#include "nonrep/sequence.hpp"
#include "nonrep/tree.hpp"

namespace nonrep {

// Sequence text form: one line of whitespace-separated 1-based integers.
// On input the letters a, b, c are accepted as aliases for 1, 2, 3.
// alphabet_size of a parsed sequence is the largest symbol seen.
std::string format_sequence(const Sequence& seq);
Sequence parse_sequence(const std::string& text);

std::string sequence_to_json(const Sequence& seq);
Sequence sequence_from_json(const std::string& text);

// Coloring text form: header "k h palette", then one "child_vertex color"
// line per edge, child_vertex ascending from 2. JSON alternative:
// {"k","h","palette","colors"} with colors[i] the color of the edge to
// vertex i+2. parse_coloring auto-detects (JSON starts with '{').
// Parse errors throw std::invalid_argument naming the offending line/token.
std::string format_coloring(const EdgeColoring& coloring);
std::string coloring_to_json(const EdgeColoring& coloring);
EdgeColoring parse_coloring(const std::string& text);

std::string fk_report_to_json(const FkReport& report);
FkReport fk_report_from_json(const std::string& text);

std::string chromatic_report_to_json(const ChromaticReport& report);
ChromaticReport chromatic_report_from_json(const std::string& text);

std::string path_witness_to_json(const PathWitness& w);
std::string kbad_witness_to_json(const KBadWitness& w);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace nonrep
