// Runs the command-line tool and compares its output with expected text.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

const std::string kFixtures = UNISEM_FIXTURES;

std::string w(const char* name) { return kFixtures + "/wirings/" + name; }
std::string m(const char* name) { return kFixtures + "/automata/" + name; }

Run cli(const std::string& args, bool with_stderr = false) {
  std::string cmd = std::string(UNISEM_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const char* name) { return std::string(UNISEM_BINARY_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("product of the first example") {
  auto r = cli("product " + w("ex1a.w") + " " + w("ex1b.w"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "f(f(X0)) <- g(X0)\n");
}

TEST_CASE("product with full renaming apart") {
  CHECK(cli("product " + w("ex2a.w") + " " + w("ex2b.w")).out == "X0*c <- X1*X0\n");
}

TEST_CASE("product with a fact") {
  CHECK(cli("product " + w("ex3a.w") + " " + w("ex3b.w")).out == "f(d*c) <- #\n");
}

TEST_CASE("tensor") {
  CHECK(cli("tensor " + w("tensor_a.w") + " " + w("tensor_b.w")).out == "(f(X0)*X1)*X2 <- (X1*X0)*g(X2)\n");
}

TEST_CASE("sum and power") {
  CHECK(cli("sum " + w("ex1a.w") + " " + w("ex1a.w")).out == "f(X0) <- X0\n");
  CHECK(cli("power " + w("swap_fg.w") + " 2").out == "f(X0) <- f(X0)\ng(X0) <- g(X0)\n");
  CHECK(cli("power " + w("fg.w") + " 2").out == "");
}

TEST_CASE("parse round trip is stable") {
  auto first = cli("parse " + w("two_step_obs.w"));
  CHECK(first.exit_code == 0);
  std::string out = temp_path("roundtrip.w");
  CHECK(cli("parse " + w("two_step_obs.w") + " -o " + out).exit_code == 0);
  CHECK(slurp(out) == first.out);
  CHECK(cli("parse " + out).out == first.out);
}

TEST_CASE("nilpotent answers") {
  auto u = cli("nilpotent " + w("unit.w"));
  CHECK(u.exit_code == 1);
  CHECK(u.out == "not nilpotent\ngraph: vertices 1, edges 1\ncycle: #\n");
  auto s = cli("nilpotent " + w("swap_fg.w"));
  CHECK(s.exit_code == 1);
  CHECK(s.out.find("cycle: f(#) -> g(#)") != std::string::npos);
  auto f = cli("nilpotent " + w("fg.w"));
  CHECK(f.exit_code == 0);
  CHECK(f.out == "nilpotent\ngraph: vertices 3, edges 1\n");
  auto it = cli("nilpotent --method iterate " + w("fg.w"));
  CHECK(it.exit_code == 0);
  CHECK(it.out == "nilpotent\niteration: F^2 = 0\n");
  auto ui = cli("nilpotent --method iterate --witness " + w("unit.w"));
  CHECK(ui.exit_code == 1);
  CHECK(ui.out.find("cycle: #") != std::string::npos);
}

TEST_CASE("iteration past the automatic bound") {
  auto r = cli("nilpotent --method iterate " + w("slow_powers.w"));
  CHECK(r.exit_code == 1);
  CHECK(r.out == "not nilpotent\niteration: no zero power up to F^3\n");
}

TEST_CASE("space and graph") {
  CHECK(cli("space " + w("fg.w")).out == "|Comp(F)| = 3, cardinality bound (|S|+1)^P_h(A) = (2+1)^P_1(1) = 9\n");
  std::string dot = temp_path("fg.dot");
  auto g = cli("graph " + w("fg.w") + " --dot " + dot);
  CHECK(g.exit_code == 0);
  CHECK(slurp(dot).find("\"g(#)\" -> \"f(#)\";") != std::string::npos);
  auto s = cli("graph " + w("swap_fg.w") + " --dot " + temp_path("swap.dot"));
  CHECK(s.exit_code == 0);
  CHECK(slurp(temp_path("swap.dot")).find("color=red") != std::string::npos);
}

TEST_CASE("budget errors report the bound") {
  auto r = cli("nilpotent --max-vertices 2 " + w("fg.w"), true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("cardinality bound") != std::string::npos);
}

TEST_CASE("word representation") {
  auto r = cli("word --alphabet 0,1 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "% alphabet: 0,1\n"
        "% positions: pos0,pos1\n"
        "#*L*X0*X1*M(pos0) <- 1*R*X0*X1*M(pos1)\n"
        "#*R*X0*X1*M(pos0) <- 1*L*X0*X1*M(pos1)\n"
        "1*L*X0*X1*M(pos1) <- #*R*X0*X1*M(pos0)\n"
        "1*R*X0*X1*M(pos1) <- #*L*X0*X1*M(pos0)\n");
  CHECK(cli("word --alphabet 0,1 2").exit_code == 2);
}

TEST_CASE("compile the two-transition machine") {
  auto r = cli("compile-automaton " + m("two_step.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "% alphabet: 0,1\n"
        "#*L*init*A0*M(X0) <- #*R*init*A0*M(X0)\n"
        "1*L*init*A0*M(X0) <- 1*L*b*A0*M(X0)\n");
}

TEST_CASE("accept agrees with simulate") {
  std::string obs = temp_path("ends_in_1.w");
  CHECK(cli("compile-automaton " + m("ends_in_1.json") + " -o " + obs).exit_code == 0);
  for (const char* word : {"01", "10", "1", "0", "0111", "0110"}) {
    auto a = cli("accept --obs " + obs + " " + word);
    auto s = cli("simulate " + m("ends_in_1.json") + " " + word);
    CHECK(a.exit_code == s.exit_code);
    CHECK((a.exit_code == 0) == (a.out.rfind("accepted", 0) == 0));
  }
  auto it = cli("accept --method iterate --obs " + obs + " 10");
  CHECK(it.exit_code == 1);
  CHECK(it.out.rfind("rejected", 0) == 0);
}

TEST_CASE("accept on the compiled two-transition machine") {
  std::string obs = temp_path("two_step_compiled.w");
  CHECK(cli("compile-automaton " + m("two_step.json") + " -o " + obs).exit_code == 0);
  for (const char* word : {"1", "0", "01", "11"}) {
    auto a = cli("accept --obs " + obs + " " + word);
    auto again = cli("accept --obs " + obs + " " + word);
    CHECK(a.out == again.out);
    CHECK(a.exit_code == cli("simulate " + m("two_step.json") + " " + word).exit_code);
  }
}

TEST_CASE("accept on the two-flow observation") {
  auto r = cli("accept --obs " + w("two_step_obs.w") + " 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("accepted\n", 0) == 0);
}

TEST_CASE("simulate output") {
  CHECK(cli("simulate " + m("ends_in_1.json") + " 01").out == "halts\n");
  auto r = cli("simulate " + m("ends_in_1.json") + " 10");
  CHECK(r.exit_code == 1);
  CHECK(r.out.rfind("loops\ncycle:\n", 0) == 0);
}

TEST_CASE("cross-validate") {
  auto r = cli("cross-validate " + m("contains_01.json") + " --max-len 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "words: 15, mismatches: 0\n");
}

TEST_CASE("check") {
  CHECK(cli("check --balanced " + w("fg.w")).out == "balanced: yes\n");
  auto u = cli("check --balanced " + w("unbalanced.w"));
  CHECK(u.exit_code == 1);
  CHECK(u.out == "balanced: no\n");
  CHECK(cli("check --deterministic " + w("fanout.w")).exit_code == 1);
  CHECK(cli("check --observation 0,1 " + w("two_step_obs.w")).exit_code == 0);
  std::string rep = temp_path("word01.w");
  CHECK(cli("word --alphabet 0,1 01 -o " + rep).exit_code == 0);
  CHECK(cli("check --word-rep " + rep).out == "word-rep: yes (word \"01\")\n");
  CHECK(cli("check " + w("fg.w")).exit_code == 2);
}

TEST_CASE("input errors") {
  std::string bad = temp_path("bad.w");
  std::ofstream(bad) << "f(X <- X\n";
  auto p = cli("parse " + bad, true);
  CHECK(p.exit_code == 2);
  CHECK(p.out.rfind("error: parse error: " + bad + ": line 1, column 5", 0) == 0);
  auto u = cli("nilpotent " + w("unbalanced.w"), true);
  CHECK(u.exit_code == 2);
  CHECK(u.out.find("unbalanced") != std::string::npos);
  CHECK(cli("nilpotent /nonexistent.w").exit_code == 2);
  CHECK(cli("frobnicate").exit_code == 2);
  CHECK(cli("--help").exit_code == 0);
}

TEST_CASE("identical runs give identical bytes") {
  std::string args = "nilpotent --witness " + w("swap_fg.w");
  CHECK(cli(args).out == cli(args).out);
  std::string cv = "compile-automaton " + m("palindrome.json");
  CHECK(cli(cv).out == cli(cv).out);
}
