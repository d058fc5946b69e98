#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "avoid/cli.hpp"
#include "avoid/dzn_io.hpp"
#include "avoid/oracle.hpp"
#include "avoid/words.hpp"
#include "fixtures.hpp"

using namespace avoid;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string strip_newline(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("words prints base prefixes") {
  CHECK(run({"words", "--base", "t", "--length", "10"}).out == "0110100110\n");
  CHECK(run({"words", "--base", "h", "--length", "6"}).out == "012021\n");
  CHECK(run({"words", "--base", "t", "--length", "0"}).out == "\n");
  CHECK(run({"words", "--base", "q", "--length", "3"}).exit_code == 64);
}

TEST_CASE("generate finds an oracle-valid word") {
  CliResult r = run({"generate", "--sigma", "3", "--length", "10", "--pattern", "xx"});
  REQUIRE(r.exit_code == 0);
  Word word = parse_solution_word(strip_newline(r.out), 3);
  CHECK(word.size() == 10);
  CHECK(oracle_avoids(word, Formula({parse_pattern("xx")}, Semantics::PlainWithReversal)));
}

TEST_CASE("generate reports proven exhaustion with exit code 1") {
  CliResult r = run({"generate", "--sigma", "2", "--length", "4", "--pattern", "xx"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("generate reports a budget hit with exit code 2") {
  CliResult r = run({"generate", "--sigma", "3", "--length", "30", "--pattern", "xx",
                     "--max-nodes", "3"});
  CHECK(r.exit_code == 2);
}

TEST_CASE("AVOID_MAX_NODES provides a default budget") {
  setenv("AVOID_MAX_NODES", "3", 1);
  CliResult r = run({"generate", "--sigma", "3", "--length", "30", "--pattern", "xx"});
  unsetenv("AVOID_MAX_NODES");
  CHECK(r.exit_code == 2);
  // an explicit flag wins over the environment
  setenv("AVOID_MAX_NODES", "3", 1);
  CliResult flagged = run({"generate", "--sigma", "3", "--length", "30", "--pattern", "xx",
                           "--max-nodes", "1000000"});
  unsetenv("AVOID_MAX_NODES");
  CHECK(flagged.exit_code == 0);
}

TEST_CASE("generate usage errors exit with 64") {
  CHECK(run({"generate", "--sigma", "3", "--pattern", "xx"}).exit_code == 64);
  CHECK(run({"generate", "--sigma", "3", "--length", "5", "--pattern", "x1("}).exit_code == 64);
  CHECK(run({"frobnicate"}).exit_code == 64);
}

TEST_CASE("generate digit format") {
  CliResult r = run({"generate", "--sigma", "3", "--length", "5", "--pattern", "xx",
                     "--format", "digits"});
  REQUIRE(r.exit_code == 0);
  CHECK(strip_newline(r.out).size() == 5);
}

TEST_CASE("generate-morphic finds a cube-free image") {
  CliResult r = run({"generate-morphic", "--base", "t", "--prefix", "5", "--image-lengths",
                     "3,2", "--sigma", "3", "--pattern", "xxx"});
  REQUIRE(r.exit_code == 0);
  Word word = parse_solution_word(strip_newline(r.out), 3);
  CHECK(word.size() == 12);
  CHECK(oracle_avoids(word, Formula({parse_pattern("xxx")}, Semantics::PlainWithReversal)));
}

TEST_CASE("generate-morphic proves exhaustion for squares over 01101") {
  CliResult r = run({"generate-morphic", "--base", "t", "--prefix", "5", "--image-lengths",
                     "3,2", "--sigma", "3", "--pattern", "xx"});
  CHECK(r.exit_code == 1);
}

TEST_CASE("check verdicts and exit codes") {
  CliResult ok = run({"check", std::string(fixtures::kReversal30), "--sigma", "4",
                      "--pattern", "x1x2x2x1r"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "pattern x1x2x2x1r: avoided\n");

  CliResult bad = run({"check", "[1,1]", "--sigma", "2", "--pattern", "xx"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("instance at start=1") != std::string::npos);
  CHECK(bad.out.find("lengths=[1]") != std::string::npos);
  CHECK(bad.out.find("images=[[1]]") != std::string::npos);

  CliResult perm = run({"check", std::string(fixtures::kPerm54), "--sigma", "4", "--pattern",
                        "x1x1", "--pattern", "x1p1(x1)x1r", "--mode", "perm"});
  CHECK(perm.exit_code == 0);
}

TEST_CASE("check accepts the positional checker form") {
  CliResult r = run({"check", "--paper-args", std::string(fixtures::kReversal30), "4", "30",
                     "x1x2x2x1r"});
  CHECK(r.exit_code == 0);
  CliResult mismatch = run({"check", "--paper-args", "[1, 2]", "4", "3", "xx"});
  CHECK(mismatch.exit_code == 64);
}

TEST_CASE("export writes the generator-form data file") {
  const std::string path = "cli_export_test.dzn";
  CliResult r = run({"export", "--paper-args", "t", "10", "3", "2", "5", path, "x1x2x2x1r"});
  REQUIRE(r.exit_code == 0);
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("sigma = 5;\n") != std::string::npos);
  CHECK(text.find("wordLength = 5;\n") != std::string::npos);
  CHECK(text.find("  1, 2, 2, -1,\n") != std::string::npos);
  CHECK(text.find("morphicWordLength = 10;\n") != std::string::npos);
  CHECK(text.find("[  0, 1, 1, 0, 1, 0, 0, 1, 1, 0, ]") != std::string::npos);
  CHECK(text.find("morphicWordImagesLengths = array1d(1..numberOfMorphicWordImages, "
                  "[  3, 2, ]);") != std::string::npos);
  CHECK(read_data_file(text).sigma == 5);

  // idempotent
  CliResult again = run({"export", "--paper-args", "t", "10", "3", "2", "5", path,
                         "x1x2x2x1r"});
  CHECK(again.exit_code == 0);
  std::ifstream in2(path, std::ios::binary);
  std::ostringstream ss2;
  ss2 << in2.rdbuf();
  CHECK(ss2.str() == text);
  std::remove(path.c_str());
}

TEST_CASE("export with named flags and a permutation formula") {
  const std::string path = "cli_export_perm.dzn";
  CliResult r = run({"export", "--output", path, "--sigma", "3", "--length", "20",
                     "--pattern", "x1x2p2(x1)", "--pattern", "x1p1(x1)", "--mode", "perm"});
  REQUIRE(r.exit_code == 0);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("  1,0,1,0,    1,1,1,0,    0,0,0,0,\n") != std::string::npos);
  DataFileSpec spec = read_data_file(ss.str());
  CHECK(spec.word_length == 20);
  std::remove(path.c_str());
}

TEST_CASE("export to an unwritable path exits with 64") {
  CliResult r = run({"export", "--output", "/nonexistent-dir/x.dzn", "--sigma", "3",
                     "--length", "5", "--pattern", "xx"});
  CHECK(r.exit_code == 64);
}

TEST_CASE("pipeline closure: generate output passes check") {
  const struct {
    std::vector<std::string> generate;
    std::vector<std::string> check_tail;
  } cases[] = {
      {{"generate", "--sigma", "3", "--length", "12", "--pattern", "xx"},
       {"--sigma", "3", "--pattern", "xx"}},
      {{"generate", "--sigma", "4", "--length", "12", "--pattern", "x1x2x2x1r"},
       {"--sigma", "4", "--pattern", "x1x2x2x1r"}},
      {{"generate", "--sigma", "3", "--length", "7", "--pattern", "xx", "--mode", "abelian"},
       {"--sigma", "3", "--pattern", "xx", "--mode", "abelian"}},
      {{"generate", "--sigma", "3", "--length", "8", "--pattern", "x1p1(x1)x1r", "--mode",
        "perm"},
       {"--sigma", "3", "--pattern", "x1p1(x1)x1r", "--mode", "perm"}},
  };
  for (const auto& c : cases) {
    CliResult gen = run(c.generate);
    REQUIRE(gen.exit_code == 0);
    std::vector<std::string> check_args{"check", strip_newline(gen.out)};
    check_args.insert(check_args.end(), c.check_tail.begin(), c.check_tail.end());
    CliResult chk = run(check_args);
    CHECK(chk.exit_code == 0);
  }
}

TEST_SUITE_END();
