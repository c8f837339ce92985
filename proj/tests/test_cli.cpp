#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "nonrep/io.hpp"
#include "nonrep/kspecial.hpp"
#include "nonrep/tree.hpp"

using namespace nonrep;

static const std::string kBin = NONREP_CLI_PATH;

struct CliResult {
  int code = -1;
  std::string out;
};

// Run one shell command, capturing stdout and the exit code.
static CliResult sh(const std::string& command) {
  CliResult r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

static CliResult run(const std::string& args) { return sh(kBin + " " + args); }

static CliResult run_with_input(const std::string& args, const std::string& input) {
  std::string path = "cli_stdin_scratch.txt";
  std::ofstream(path) << input;
  CliResult r = sh(kBin + " " + args + " < " + path);
  std::remove(path.c_str());
  return r;
}

TEST_CASE("seq gen goldens") {
  CliResult palfree = run("seq gen --variant palfree --length 9");
  CHECK(palfree.code == 0);
  CHECK(palfree.out == "1 2 4 3 1 4 3 2 4\n");

  CliResult snc = run("seq gen --variant snc --n 4 --c 0");
  CHECK(snc.code == 0);
  CHECK(snc.out == "1 2 3 4\n");

  CliResult abab = run("seq gen --variant ababab --length 6");
  CHECK(abab.code == 0);
  CHECK(abab.out == "3 1 2 3 2 1\n");
}

TEST_CASE("seq gen expand reads stdin") {
  CliResult r = run_with_input("seq gen --variant expand --w 2 --in -", "1 2 1\n");
  CHECK(r.code == 0);
  CHECK(r.out == "1 2 3 4 1 2\n");
}

TEST_CASE("seq check reports witnesses") {
  CliResult bad = run_with_input("seq check --kspecial 2", "1 2 3 4 1 2\n");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("3 1 2 3 5 6") != std::string::npos);

  CliResult clean = run_with_input("seq check --squares --palindromes --kspecial 1", "1 2 3\n");
  CHECK(clean.code == 0);
  CHECK(clean.out.find("none") != std::string::npos);

  CliResult square = run_with_input("seq check --squares", "1 2 1 2\n");
  CHECK(square.code == 1);
  CHECK(square.out.find("square") != std::string::npos);
}

TEST_CASE("every generator output re-checks clean") {
  for (const char* gen : {"seq gen --variant squarefree --length 200",
                          "seq gen --variant palfree --length 200",
                          "seq gen --variant ababab --length 200"}) {
    CliResult r = sh(kBin + " " + gen + " | " + kBin + " seq check --squares");
    CHECK(r.code == 0);
  }
  CliResult special = sh(kBin + " seq gen --variant 3k1 --k 2 --length 60 | " + kBin +
                         " seq check --kspecial 2");
  CHECK(special.code == 0);
  CliResult expanded = sh(kBin + " seq gen --variant 3k3 --k 2 --length 60 | " + kBin +
                          " seq check --kspecial 2");
  CHECK(expanded.code == 0);
}

TEST_CASE("seq fk json output parses back") {
  CliResult r = run("seq fk --k 2 --n 4 --format json");
  CHECK(r.code == 0);
  FkReport report = fk_report_from_json(r.out);
  CHECK(report.max_length == 5);
  CHECK(report.exhaustive);
  REQUIRE(report.witnesses.size() == 1);

  // thread count comes from the environment and changes nothing
  CliResult env = sh("NONREP_THREADS=4 " + kBin + " seq fk --k 2 --n 5 --format json");
  CliResult one = run("seq fk --k 2 --n 5 --threads 1 --format json");
  CHECK(env.code == 0);
  CHECK(env.out == one.out);
}

TEST_CASE("tree derive feeds tree verify") {
  CliResult bad = sh("echo 1 2 3 1 2 3 | " + kBin + " tree derive --k 2 --h 3 --seq - | " + kBin +
                     " tree verify --coloring -");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("repetitive") != std::string::npos);

  CliResult good = sh("echo 1 2 3 4 1 2 | " + kBin + " tree derive --k 2 --h 3 --seq - | " + kBin +
                      " tree verify --coloring -");
  CHECK(good.code == 0);
}

TEST_CASE("explicit colorings verify clean through files") {
  // text form
  CliResult sv = sh(kBin + " tree sv --k 3 | " + kBin + " tree verify --coloring -");
  CHECK(sv.code == 0);
  CHECK(sv.out == "nonrepetitive\n");
  // json form auto-detected
  CliResult t24 = sh(kBin + " tree t24 --format json | " + kBin + " tree verify --coloring -");
  CHECK(t24.code == 0);

  // through an actual file: the derived height-3 coloring
  std::string path = "cli_fig2_scratch.txt";
  write_file(path, format_coloring(derived_coloring(TreeShape{2, 3}, s_n_c(4, 2))));
  CliResult fig2 = run("tree verify --coloring " + path);
  CHECK(fig2.code == 0);
  std::remove(path.c_str());
}

TEST_CASE("tree pi") {
  CliResult classes = run("tree pi --k 2 --h 2 --palette 4 --count-classes");
  CHECK(classes.code == 0);
  CHECK(classes.out.find("classes=2") != std::string::npos);

  CliResult exact = run("tree pi --k 2 --h 2");
  CHECK(exact.code == 0);
  CHECK(exact.out.find("pi_prime=4") != std::string::npos);

  CliResult partial = run("tree pi --k 2 --h 4 --budget 0 2>/dev/null");
  CHECK(partial.code == 3);
  CHECK(partial.out.find("partial") != std::string::npos);
}

TEST_CASE("table reproduces the pinned cells") {
  CliResult r = run("table --max-k 2 --max-h 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("k\th\tvalue\tstatus\tprovenance") != std::string::npos);
  CHECK(r.out.find("2\t2\t4\texact") != std::string::npos);
  CHECK(r.out.find("1\t1\t1\texact") != std::string::npos);

  CliResult js = run("table --max-k 2 --max-h 2 --format json");
  CHECK(js.code == 0);
  CHECK(js.out.find("\"value\":\"4\"") != std::string::npos);
  CHECK(js.out.find("\"provenance\":\"sv\"") != std::string::npos);
}

TEST_CASE("output redirection") {
  std::string path = "cli_out_scratch.txt";
  CliResult quiet = run("seq gen --variant snc --n 3 --c 1 --out " + path);
  CHECK(quiet.code == 0);
  CHECK(quiet.out.empty());
  CHECK(read_file(path) == "1 2 3 1\n");

  CliResult teed = run("seq gen --variant snc --n 3 --c 1 --out " + path + " --tee");
  CHECK(teed.out == "1 2 3 1\n");
  CHECK(read_file(path) == "1 2 3 1\n");
  std::remove(path.c_str());
}

TEST_CASE("usage and parse errors exit 2") {
  CHECK(run("seq gen --variant nope 2>/dev/null").code == 2);
  CHECK(run("seq gen 2>/dev/null").code == 2);
  CHECK(run_with_input("seq check 2>/dev/null", "1 2 3\n").code == 2);
  CHECK(run_with_input("seq check --squares 2>/dev/null", "1 x 3\n").code == 2);
  CHECK(run("seq gen --variant snc --n 3 --c 3 2>/dev/null").code == 2);
  CHECK(run("tree verify --coloring does_not_exist.txt 2>/dev/null").code == 2);
  CHECK(run("tree pi --k 2 --h 2 --budget weird 2>/dev/null").code == 2);
  CHECK(run("tree pi --k 2 --h 2 --count-classes 2>/dev/null").code == 2);
  CHECK(run_with_input("tree verify --coloring - 2>/dev/null", "2 2\n1\n").code == 2);
}
