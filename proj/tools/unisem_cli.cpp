// unisem: command-line front end over the C API.
// Exit codes: 0 affirmative, 1 negative answer, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "unisem/unisem.h"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kBad = 2;

struct Failure {
  std::string message;
};

struct Context {
  us_context* ctx = us_context_new();
  ~Context() { us_context_free(ctx); }

  void check(us_status s) const {
    if (s != US_OK) throw Failure{std::string(us_status_name(s)) + ": " + us_last_error(ctx)};
  }
};

// Owning handle; `p` is filled by the C API through its address.
template <class T, void (*Free)(T*)>
struct Owned {
  T* p = nullptr;
  Owned() = default;
  Owned(Owned&& o) noexcept : p(std::exchange(o.p, nullptr)) {}
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { Free(p); }
};
using WiringPtr = Owned<us_wiring, us_wiring_free>;
using AutomatonPtr = Owned<us_automaton, us_automaton_free>;

struct String : Owned<char, us_string_free> {
  std::string str() const { return p ? p : ""; }
};
struct Result {
  us_result r{};
  Result() = default;
  Result(const Result&) = delete;
  Result& operator=(const Result&) = delete;
  ~Result() { us_result_clear(&r); }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"cannot write " + path};
  out << text;
}

WiringPtr load(const Context& c, const std::string& path) {
  WiringPtr w;
  c.check(us_wiring_read_file(c.ctx, path.c_str(), &w.p));
  return w;
}

std::string render(const Context& c, const us_wiring* w) {
  String s;
  c.check(us_wiring_to_string(c.ctx, w, &s.p));
  return s.str();
}

struct SolverFlags {
  std::string method = "graph";
  std::string space = "default";
  std::uint64_t max_vertices = 1'000'000;
  bool unify = false;

  void add(CLI::App* app) {
    app->add_option("--method", method, "graph or iterate")->check(CLI::IsMember({"graph", "iterate"}));
    app->add_option("--space", space, "vertex set: full, support or default")
        ->check(CLI::IsMember({"default", "full", "support"}));
    app->add_option("--max-vertices", max_vertices, "vertex budget")->check(CLI::PositiveNumber);
    app->add_flag("--unify", unify, "build edges by unification instead of matching");
  }

  us_options options() const {
    us_options o;
    us_options_init(&o);
    o.method = method == "iterate" ? US_METHOD_ITERATE : US_METHOD_GRAPH;
    o.scope = space == "full" ? US_SCOPE_FULL : space == "support" ? US_SCOPE_SUPPORT : US_SCOPE_DEFAULT;
    o.max_vertices = max_vertices;
    o.cross_check_unify = unify;
    return o;
  }
};

void describe(const us_result& r, const us_options& o) {
  if (o.method == US_METHOD_GRAPH) {
    std::cout << "graph: vertices " << r.vertices << ", edges " << r.edges << "\n";
  } else if (r.answer == US_NILPOTENT) {
    std::cout << "iteration: F^" << r.degree << " = 0\n";
  } else if (r.answer == US_NOT_NILPOTENT && r.degree > 0) {
    std::cout << "iteration: power " << r.degree << " repeats an earlier power\n";
  } else {
    std::cout << "iteration: no zero power up to F^" << r.bound << "\n";
  }
  if (r.witness) std::cout << "cycle: " << r.witness << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unification semiring toolkit: wirings, nilpotency, words and automata"};
  app.require_subcommand(1);
  app.set_version_flag("--version", us_version());

  std::string file_a, file_b, out_path, word, alphabet;
  std::uint64_t exponent = 0;
  std::size_t max_len = 0;
  SolverFlags solver;
  bool witness = false;
  bool check_balanced = false, check_deterministic = false, check_word = false;
  std::string check_alphabet;

  auto* parse = app.add_subcommand("parse", "print a wiring file in canonical form");
  parse->add_option("FILE", file_a)->required();
  parse->add_option("-o", out_path, "output file");

  auto* sum_cmd = app.add_subcommand("sum", "union of two wirings");
  auto* product_cmd = app.add_subcommand("product", "product of two wirings");
  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two wirings");
  for (auto* sub : {sum_cmd, product_cmd, tensor_cmd}) {
    sub->add_option("A", file_a)->required();
    sub->add_option("B", file_b)->required();
    sub->add_option("-o", out_path, "output file");
  }

  auto* power_cmd = app.add_subcommand("power", "n-th power of a wiring");
  power_cmd->add_option("F", file_a)->required();
  power_cmd->add_option("N", exponent)->required();
  power_cmd->add_option("-o", out_path, "output file");

  auto* nil_cmd = app.add_subcommand("nilpotent", "decide nilpotency of a balanced wiring");
  nil_cmd->add_option("F", file_a)->required();
  solver.add(nil_cmd);
  nil_cmd->add_flag("--witness", witness, "with --method iterate, also search the graph for a cycle");

  auto* space_cmd = app.add_subcommand("space", "size of the computation space and its bound");
  space_cmd->add_option("F", file_a)->required();

  auto* graph_cmd = app.add_subcommand("graph", "export the computation graph");
  graph_cmd->add_option("F", file_a)->required();
  graph_cmd->add_option("--dot", out_path, "DOT output file (default stdout)");
  solver.add(graph_cmd);

  auto* word_cmd = app.add_subcommand("word", "representation of a word");
  word_cmd->add_option("--alphabet", alphabet, "comma-separated letters")->required();
  word_cmd->add_option("WORD", word)->required();
  word_cmd->add_option("-o", out_path, "output file");

  auto* accept_cmd = app.add_subcommand("accept", "does an observation accept a word");
  accept_cmd->add_option("--obs", file_a, "observation file")->required();
  accept_cmd->add_option("--alphabet", alphabet, "letters (default: the file's alphabet header)");
  accept_cmd->add_option("WORD", word)->required();
  solver.add(accept_cmd);

  auto* compile_cmd = app.add_subcommand("compile-automaton", "compile an automaton into an observation");
  compile_cmd->add_option("M", file_a)->required();
  compile_cmd->add_option("-o", out_path, "output file");

  auto* sim_cmd = app.add_subcommand("simulate", "run an automaton directly");
  sim_cmd->add_option("M", file_a)->required();
  sim_cmd->add_option("WORD", word)->required();

  auto* cross_cmd = app.add_subcommand("cross-validate", "compare simulation and compiled acceptance");
  cross_cmd->add_option("M", file_a)->required();
  cross_cmd->add_option("--max-len", max_len, "longest word")->required();
  solver.add(cross_cmd);

  auto* check_cmd = app.add_subcommand("check", "structural checks on a wiring");
  check_cmd->add_option("F", file_a)->required();
  check_cmd->add_flag("--balanced", check_balanced);
  check_cmd->add_flag("--deterministic", check_deterministic, "bodies pairwise non-unifiable");
  check_cmd->add_option("--observation", check_alphabet, "observation over these letters");
  check_cmd->add_flag("--word-rep", check_word, "exactly the representation of some word");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBad;
  }

  Context c;
  if (c.ctx == nullptr) {
    std::cerr << "error: out of memory\n";
    return kBad;
  }
  try {
    if (*parse) {
      emit(render(c, load(c, file_a).p), out_path);
      return kYes;
    }
    if (*sum_cmd || *product_cmd || *tensor_cmd) {
      WiringPtr a = load(c, file_a), b = load(c, file_b), r;
      auto op = *sum_cmd ? us_wiring_sum : *product_cmd ? us_wiring_product : us_wiring_tensor;
      c.check(op(c.ctx, a.p, b.p, &r.p));
      emit(render(c, r.p), out_path);
      return kYes;
    }
    if (*power_cmd) {
      WiringPtr f = load(c, file_a), r;
      c.check(us_wiring_power(c.ctx, f.p, exponent, &r.p));
      emit(render(c, r.p), out_path);
      return kYes;
    }
    if (*nil_cmd) {
      WiringPtr f = load(c, file_a);
      us_options o = solver.options();
      Result r;
      c.check(us_nilpotent(c.ctx, f.p, &o, &r.r));
      if (witness && o.method == US_METHOD_ITERATE && r.r.answer != US_NILPOTENT) {
        us_options g = o;
        g.method = US_METHOD_GRAPH;
        Result gr;
        c.check(us_nilpotent(c.ctx, f.p, &g, &gr.r));
        std::swap(r.r.witness, gr.r.witness);
      }
      std::cout << (r.r.answer == US_NILPOTENT ? "nilpotent" : "not nilpotent") << "\n";
      describe(r.r, o);
      return r.r.answer == US_NILPOTENT ? kYes : kNo;
    }
    if (*space_cmd) {
      WiringPtr f = load(c, file_a);
      String s;
      c.check(us_space_info(c.ctx, f.p, &s.p));
      std::cout << s.str() << "\n";
      return kYes;
    }
    if (*graph_cmd) {
      WiringPtr f = load(c, file_a);
      us_options o = solver.options();
      String dot;
      c.check(us_graph_dot(c.ctx, f.p, &o, &dot.p));
      emit(dot.str(), out_path);
      return kYes;
    }
    if (*word_cmd) {
      WiringPtr w;
      c.check(us_word_represent(c.ctx, alphabet.c_str(), word.c_str(), &w.p));
      emit(render(c, w.p), out_path);
      return kYes;
    }
    if (*accept_cmd) {
      WiringPtr o = load(c, file_a);
      us_options opts = solver.options();
      Result r;
      int accepted = 0;
      c.check(us_accept(c.ctx, o.p, alphabet.empty() ? nullptr : alphabet.c_str(), word.c_str(), &opts, &r.r,
                        &accepted));
      std::cout << (accepted ? "accepted" : "rejected") << "\n";
      describe(r.r, opts);
      return accepted ? kYes : kNo;
    }
    if (*compile_cmd || *sim_cmd || *cross_cmd) {
      AutomatonPtr m;
      c.check(us_automaton_read_file(c.ctx, file_a.c_str(), &m.p));
      if (*compile_cmd) {
        WiringPtr w;
        c.check(us_automaton_compile(c.ctx, m.p, &w.p));
        emit(render(c, w.p), out_path);
        return kYes;
      }
      if (*sim_cmd) {
        int halts = 0;
        String cycle;
        c.check(us_automaton_simulate(c.ctx, m.p, word.c_str(), &halts, &cycle.p));
        std::cout << (halts ? "halts" : "loops") << "\n";
        if (!halts) std::cout << "cycle:\n" << cycle.str();
        return halts ? kYes : kNo;
      }
      us_options o = solver.options();
      std::size_t words = 0, mismatches = 0;
      String report;
      c.check(us_cross_validate(c.ctx, m.p, max_len, &o, &words, &mismatches, &report.p));
      std::cout << report.str() << "words: " << words << ", mismatches: " << mismatches << "\n";
      return mismatches == 0 ? kYes : kNo;
    }
    if (*check_cmd) {
      if (!check_balanced && !check_deterministic && !check_word && check_alphabet.empty()) {
        std::cerr << "error: check needs at least one of --balanced, --deterministic, --observation, --word-rep\n";
        return kBad;
      }
      WiringPtr f = load(c, file_a);
      bool all = true;
      auto report = [&](const char* name, int ok, const std::string& extra = "") {
        std::cout << name << ": " << (ok ? "yes" : "no") << extra << "\n";
        all = all && ok;
      };
      int ok = 0;
      if (check_balanced) {
        c.check(us_check_balanced(c.ctx, f.p, &ok));
        report("balanced", ok);
      }
      if (check_deterministic) {
        c.check(us_check_deterministic(c.ctx, f.p, &ok));
        report("deterministic", ok);
      }
      if (!check_alphabet.empty()) {
        c.check(us_check_observation(c.ctx, f.p, check_alphabet.c_str(), &ok));
        report("observation", ok);
      }
      if (check_word) {
        String w;
        c.check(us_check_word_rep(c.ctx, f.p, &ok, &w.p));
        report("word-rep", ok, ok ? " (word \"" + w.str() + "\")" : "");
      }
      return all ? kYes : kNo;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kBad;
  }
  return kBad;
}
