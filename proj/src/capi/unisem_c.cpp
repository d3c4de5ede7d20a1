#include "unisem/unisem.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "unisem/automata.hpp"
#include "unisem/error.hpp"
#include "unisem/syntax.hpp"

using namespace unisem;

struct us_context {
  std::shared_ptr<SymbolTable> symbols = std::make_shared<SymbolTable>();
  std::string error;
};

struct us_wiring {
  const us_context* ctx;
  Wiring wiring;
  std::map<std::string, std::string> headers;
};

struct us_automaton {
  const us_context* ctx;
  Automaton machine;
};

namespace {

us_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return US_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return US_ERR_PARSE;
    case ErrorCode::UnsafeFlow: return US_ERR_UNSAFE_FLOW;
    case ErrorCode::UnbalancedWiring: return US_ERR_UNBALANCED;
    case ErrorCode::VertexBudgetExceeded: return US_ERR_VERTEX_BUDGET;
    case ErrorCode::OutDegreeViolation: return US_ERR_OUT_DEGREE;
    case ErrorCode::PositionCountMismatch: return US_ERR_POSITION_COUNT;
    case ErrorCode::DuplicatePosition: return US_ERR_DUPLICATE_POSITION;
    case ErrorCode::SymbolNotInAlphabet: return US_ERR_NOT_IN_ALPHABET;
    case ErrorCode::Automaton: return US_ERR_AUTOMATON;
    case ErrorCode::Io: return US_ERR_IO;
  }
  return US_ERR_INTERNAL;
}

template <class Body>
us_status guarded(us_context* ctx, Body&& body) {
  if (ctx == nullptr) return US_ERR_INVALID_ARGUMENT;
  try {
    body();
    ctx->error.clear();
    return US_OK;
  } catch (const Error& e) {
    ctx->error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    return US_ERR_INTERNAL;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return US_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

void same_context(const us_context* ctx, const us_wiring* w) {
  require(w != nullptr, "null wiring");
  require(w->ctx == ctx, "wiring belongs to another context");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  require(path != nullptr, "null path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

us_wiring* make_wiring(const us_context* ctx, Wiring w, std::map<std::string, std::string> headers = {}) {
  return new us_wiring{ctx, std::move(w), std::move(headers)};
}

GraphOptions graph_options(const us_options* o, VertexScope fallback) {
  GraphOptions g;
  g.scope = fallback;
  if (o == nullptr) return g;
  if (o->scope == US_SCOPE_FULL) g.scope = VertexScope::Full;
  if (o->scope == US_SCOPE_SUPPORT) g.scope = VertexScope::Support;
  if (o->max_vertices != 0) g.max_vertices = o->max_vertices;
  if (o->cross_check_unify) g.edges = EdgeMethod::Unify;
  return g;
}

NilpotencyOptions nilpotency_options(const us_options* o, VertexScope fallback) {
  NilpotencyOptions n;
  n.graph = graph_options(o, fallback);
  if (o != nullptr) {
    n.method = o->method == US_METHOD_ITERATE ? NilpotencyMethod::Iterate : NilpotencyMethod::Graph;
    n.iteration_bound = o->iteration_bound;
  }
  return n;
}

std::string join_walk(const std::vector<Term>& cycle) {
  std::string out;
  for (const Term& t : cycle) {
    if (!out.empty()) out += " -> ";
    out += to_string(t);
  }
  return out;
}

void fill_result(const NilpotencyReport& r, us_result* out) {
  *out = us_result{US_NILPOTENT, 0, 0, 0, 0, nullptr};
  switch (r.answer) {
    case NilpotencyReport::Answer::Nilpotent: out->answer = US_NILPOTENT; break;
    case NilpotencyReport::Answer::NotNilpotent: out->answer = US_NOT_NILPOTENT; break;
    case NilpotencyReport::Answer::BoundExceeded: out->answer = US_BOUND_EXCEEDED; break;
  }
  out->vertices = r.graph.vertex_count;
  out->edges = r.graph.edge_count;
  out->degree = r.iteration.kind == IterationResult::Kind::BoundExceeded ? 0 : r.iteration.degree;
  out->bound = r.bound_used;
  if (!r.graph.witness.empty()) out->witness = copy_string(join_walk(r.graph.witness));
}

std::vector<std::string> split_letters(const std::string& text) {
  std::vector<std::string> out;
  if (text.find(',') == std::string::npos) {
    for (char c : text) out.emplace_back(1, c);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

extern "C" {

const char* us_version(void) { return "1.0.0"; }

const char* us_status_name(us_status status) {
  if (status == US_OK) return "ok";
  if (status == US_ERR_INTERNAL) return "internal error";
  if (status >= US_ERR_INVALID_ARGUMENT && status <= US_ERR_IO) {
    return error_code_name(static_cast<ErrorCode>(status));
  }
  return "unknown status";
}

us_context* us_context_new(void) { return new (std::nothrow) us_context(); }
void us_context_free(us_context* ctx) { delete ctx; }
const char* us_last_error(const us_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }
void us_string_free(char* s) { std::free(s); }

void us_options_init(us_options* options) {
  if (options) *options = us_options{US_METHOD_GRAPH, US_SCOPE_DEFAULT, 0, 0, 0};
}

void us_result_clear(us_result* result) {
  if (!result) return;
  std::free(result->witness);
  *result = us_result{US_NILPOTENT, 0, 0, 0, 0, nullptr};
}

us_status us_wiring_parse(us_context* ctx, const char* text, us_wiring** out) {
  return guarded(ctx, [&] {
    require(text && out, "null argument");
    ParsedWiring p = parse_wiring(text, *ctx->symbols);
    *out = make_wiring(ctx, std::move(p.wiring), std::move(p.headers));
  });
}

us_status us_wiring_read_file(us_context* ctx, const char* path, us_wiring** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    const std::string text = read_file(path);
    try {
      ParsedWiring p = parse_wiring(text, *ctx->symbols);
      *out = make_wiring(ctx, std::move(p.wiring), std::move(p.headers));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

void us_wiring_free(us_wiring* w) { delete w; }
size_t us_wiring_size(const us_wiring* w) { return w ? w->wiring.size() : 0; }

us_status us_wiring_to_string(us_context* ctx, const us_wiring* w, char** out) {
  return guarded(ctx, [&] {
    same_context(ctx, w);
    require(out != nullptr, "null argument");
    *out = copy_string(format_wiring(w->wiring, w->headers));
  });
}

us_status us_wiring_header(us_context* ctx, const us_wiring* w, const char* key, char** out) {
  return guarded(ctx, [&] {
    same_context(ctx, w);
    require(key && out, "null argument");
    auto it = w->headers.find(key);
    *out = it == w->headers.end() ? nullptr : copy_string(it->second);
  });
}

us_status us_wiring_set_header(us_context* ctx, us_wiring* w, const char* key, const char* value) {
  return guarded(ctx, [&] {
    same_context(ctx, w);
    require(key && value, "null argument");
    w->headers[key] = value;
  });
}

us_status us_wiring_equal(us_context* ctx, const us_wiring* a, const us_wiring* b, int* equal) {
  return guarded(ctx, [&] {
    same_context(ctx, a);
    same_context(ctx, b);
    require(equal != nullptr, "null argument");
    *equal = a->wiring == b->wiring;
  });
}

us_status us_wiring_sum(us_context* ctx, const us_wiring* a, const us_wiring* b, us_wiring** out) {
  return guarded(ctx, [&] {
    same_context(ctx, a);
    same_context(ctx, b);
    require(out != nullptr, "null argument");
    *out = make_wiring(ctx, sum(a->wiring, b->wiring));
  });
}

us_status us_wiring_product(us_context* ctx, const us_wiring* a, const us_wiring* b, us_wiring** out) {
  return guarded(ctx, [&] {
    same_context(ctx, a);
    same_context(ctx, b);
    require(out != nullptr, "null argument");
    *out = make_wiring(ctx, product(a->wiring, b->wiring));
  });
}

us_status us_wiring_power(us_context* ctx, const us_wiring* f, uint64_t n, us_wiring** out) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(out != nullptr, "null argument");
    *out = make_wiring(ctx, power(f->wiring, n));
  });
}

us_status us_wiring_tensor(us_context* ctx, const us_wiring* a, const us_wiring* b, us_wiring** out) {
  return guarded(ctx, [&] {
    same_context(ctx, a);
    same_context(ctx, b);
    require(out != nullptr, "null argument");
    *out = make_wiring(ctx, tensor_wirings(a->wiring, b->wiring));
  });
}

us_status us_wiring_apply(us_context* ctx, const us_wiring* f, const char* fact, char** out) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(fact && out, "null argument");
    Term t = parse_term(fact, *ctx->symbols);
    std::string text;
    for (const Fact& v : apply(f->wiring, Fact(t))) text += to_string(v.term()) + "\n";
    *out = copy_string(text);
  });
}

us_status us_check_balanced(us_context* ctx, const us_wiring* f, int* result) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(result != nullptr, "null argument");
    *result = is_balanced(f->wiring);
  });
}

us_status us_check_deterministic(us_context* ctx, const us_wiring* f, int* result) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(result != nullptr, "null argument");
    *result = is_deterministic_syntactic(f->wiring);
  });
}

us_status us_check_observation(us_context* ctx, const us_wiring* f, const char* alphabet, int* result) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(alphabet && result, "null argument");
    *result = is_observation(f->wiring, Alphabet::parse(alphabet, *ctx->symbols));
  });
}

us_status us_check_word_rep(us_context* ctx, const us_wiring* f, int* result, char** word) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(result != nullptr, "null argument");
    auto rep = recognize_word(f->wiring);
    *result = rep.has_value();
    if (word) *word = rep ? copy_string(word_to_string(rep->word)) : nullptr;
  });
}

us_status us_space_info(us_context* ctx, const us_wiring* f, char** out) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(out != nullptr, "null argument");
    *out = copy_string(computation_space(f->wiring).describe_bound());
  });
}

us_status us_nilpotent(us_context* ctx, const us_wiring* f, const us_options* options, us_result* out) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(out != nullptr, "null argument");
    fill_result(decide_nilpotency(f->wiring, nilpotency_options(options, VertexScope::Full)), out);
  });
}

us_status us_graph_dot(us_context* ctx, const us_wiring* f, const us_options* options, char** out) {
  return guarded(ctx, [&] {
    same_context(ctx, f);
    require(out != nullptr, "null argument");
    ComputationGraph g = build_graph(f->wiring, graph_options(options, VertexScope::Full));
    CycleCheck c = is_acyclic(g);
    *out = copy_string(to_dot(g, c.cycle));
  });
}

us_status us_word_represent(us_context* ctx, const char* alphabet, const char* word, us_wiring** out) {
  return guarded(ctx, [&] {
    require(alphabet && word && out, "null argument");
    Alphabet a = Alphabet::parse(alphabet, *ctx->symbols);
    Word w = split_word(word, a);
    auto positions = canonical_positions(w.size() + 1, *ctx->symbols);
    WordRep rep = represent(a, w, positions);
    std::string names;
    for (const Symbol* p : positions) names += (names.empty() ? "" : ",") + p->name;
    *out = make_wiring(ctx, std::move(rep.wiring), {{"alphabet", a.to_string()}, {"positions", names}});
  });
}

us_status us_accept(us_context* ctx, const us_wiring* observation, const char* alphabet, const char* word,
                    const us_options* options, us_result* out, int* accepted) {
  return guarded(ctx, [&] {
    same_context(ctx, observation);
    require(word && out && accepted, "null argument");
    std::string letters;
    if (alphabet) {
      letters = alphabet;
    } else {
      auto it = observation->headers.find("alphabet");
      if (it == observation->headers.end()) {
        throw Error(ErrorCode::InvalidArgument, "no alphabet given and the observation has no `alphabet` header");
      }
      letters = it->second;
    }
    Observation o{observation->wiring, Alphabet::parse(letters, *ctx->symbols)};
    AcceptOptions a;
    a.nilpotency = nilpotency_options(options, VertexScope::Support);
    AcceptResult r = accepts(o, split_word(word, o.alphabet), *ctx->symbols, a);
    fill_result(r.report, out);
    *accepted = r.accepted;
  });
}

us_status us_automaton_parse(us_context* ctx, const char* json, us_automaton** out) {
  return guarded(ctx, [&] {
    require(json && out, "null argument");
    *out = new us_automaton{ctx, parse_automaton(json)};
  });
}

us_status us_automaton_read_file(us_context* ctx, const char* path, us_automaton** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    const std::string text = read_file(path);
    try {
      *out = new us_automaton{ctx, parse_automaton(text)};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

void us_automaton_free(us_automaton* m) { delete m; }

us_status us_automaton_compile(us_context* ctx, const us_automaton* m, us_wiring** out) {
  return guarded(ctx, [&] {
    require(m && m->ctx == ctx && out, "bad automaton argument");
    Observation o = compile(m->machine, *ctx->symbols);
    *out = make_wiring(ctx, std::move(o.wiring), {{"alphabet", o.alphabet.to_string()}});
  });
}

us_status us_automaton_simulate(us_context* ctx, const us_automaton* m, const char* word, int* halts, char** cycle) {
  return guarded(ctx, [&] {
    require(m && m->ctx == ctx && word && halts, "bad automaton argument");
    std::vector<std::string> letters = split_letters(word);
    for (const std::string& c : letters) {
      if (std::find(m->machine.alphabet.begin(), m->machine.alphabet.end(), c) == m->machine.alphabet.end()) {
        throw Error(ErrorCode::SymbolNotInAlphabet, "symbol '" + c + "' is not in the automaton's alphabet");
      }
    }
    SimulationResult r = simulate(m->machine, letters);
    *halts = r.halts;
    if (cycle) {
      std::string text;
      for (const Configuration& c : r.cycle) text += to_string(c) + "\n";
      *cycle = r.halts ? nullptr : copy_string(text);
    }
  });
}

us_status us_cross_validate(us_context* ctx, const us_automaton* m, size_t max_len, const us_options* options,
                            size_t* words, size_t* mismatches, char** report) {
  return guarded(ctx, [&] {
    require(m && m->ctx == ctx && words && mismatches, "bad automaton argument");
    AcceptOptions a;
    a.nilpotency = nilpotency_options(options, VertexScope::Support);
    CrossValidationReport r = cross_validate(m->machine, all_words(m->machine.alphabet, max_len), a);
    *words = r.entries.size();
    *mismatches = r.mismatches.size();
    if (report) {
      std::string text;
      for (const auto& e : r.mismatches) {
        text += (e.word.empty() ? std::string("(empty)") : e.word) + ": simulator " +
                (e.halts ? "halts" : "loops") + ", observation " + (e.accepted ? "accepts" : "rejects") + "\n";
      }
      *report = copy_string(text);
    }
  });
}

}  // extern "C"
