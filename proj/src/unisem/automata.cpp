#include "unisem/automata.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <tuple>

#include <json.hpp>

#include "unisem/error.hpp"

namespace unisem {

namespace {

const std::regex kName("[a-z0-9][A-Za-z0-9_]*");
const std::regex kLetter("[a-z0-9][A-Za-z0-9]*");
const std::regex kPositionName("pos[0-9]+");

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Automaton, what); }

Direction parse_direction(const std::string& s, const std::string& where) {
  if (s == "L") return Direction::L;
  if (s == "R") return Direction::R;
  fail(where + ": direction must be \"L\" or \"R\", got \"" + s + "\"");
}

Action parse_action(const std::string& s, const std::string& where) {
  if (s == "continue") return Action::Continue;
  if (s == "swap") return Action::SwapHead;
  if (s == "restore") return Action::RestoreHead;
  if (s == "reject") return Action::GoBackReject;
  fail(where + ": unknown action \"" + s + "\" (continue, swap, restore, reject)");
}

const char* direction_name(Direction d) { return d == Direction::L ? "L" : "R"; }
Direction flip(Direction d) { return d == Direction::L ? Direction::R : Direction::L; }

using Key = std::tuple<std::string, std::string, Direction>;

bool unique_keys(const std::vector<Transition>& ts, Key* clash) {
  std::set<Key> seen;
  for (const Transition& t : ts) {
    Key k{t.state, t.read, t.dir};
    if (!seen.insert(k).second) {
      if (clash) *clash = k;
      return false;
    }
  }
  return true;
}

bool targets_reject(const Automaton& m) {
  return std::any_of(m.transitions.begin(), m.transitions.end(), [](const Transition& t) {
    return t.action == Action::GoBackReject || t.next_state == kRejectState;
  });
}

}  // namespace

Automaton parse_automaton(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  Automaton m;
  try {
    if (!j.is_object()) fail("automaton description must be a JSON object");
    m.states = j.at("states").get<std::vector<std::string>>();
    m.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    m.heads = j.value("heads", 0u);
    m.deterministic = j.value("deterministic", false);
    const json& ts = j.at("transitions");
    if (!ts.is_array()) fail("\"transitions\" must be an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const json& o = ts[i];
      const std::string where = "transition " + std::to_string(i);
      Transition t;
      t.state = o.at("state").get<std::string>();
      t.read = o.at("read").get<std::string>();
      t.dir = parse_direction(o.at("dir").get<std::string>(), where);
      t.action = parse_action(o.value("action", std::string("continue")), where);
      t.next_state = o.value("next_state", t.action == Action::GoBackReject ? std::string(kRejectState) : std::string());
      if (t.next_state.empty()) fail(where + ": missing \"next_state\"");
      t.next_dir = parse_direction(o.at("next_dir").get<std::string>(), where);
      t.head_index = o.value("head_index", 0u);
      m.transitions.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    fail(std::string("malformed automaton: ") + e.what());
  }
  validate(m);
  return m;
}

void validate(const Automaton& m) {
  std::set<std::string> letters;
  for (const std::string& c : m.alphabet) {
    if (!std::regex_match(c, kLetter) || std::regex_match(c, kPositionName)) {
      fail("letter \"" + c + "\" must match [a-z0-9][A-Za-z0-9]* and not be a position name");
    }
    if (!letters.insert(c).second) fail("letter \"" + c + "\" listed twice");
  }
  if (letters.empty()) fail("empty alphabet");
  std::set<std::string> states;
  for (const std::string& s : m.states) {
    if (!std::regex_match(s, kName) || std::regex_match(s, kPositionName) || s.find("__") != std::string::npos) {
      fail("state \"" + s + "\" must match [a-z0-9][A-Za-z0-9_]*, avoid \"__\" and position names");
    }
    if (letters.contains(s)) fail("state \"" + s + "\" is also a letter");
    states.insert(s);
  }
  if (!states.contains(std::string(kInitState))) fail("states must include \"init\"");
  states.insert(std::string(kRejectState));
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Transition& t = m.transitions[i];
    const std::string where = "transition " + std::to_string(i);
    if (!states.contains(t.state)) fail(where + ": unknown state \"" + t.state + "\"");
    if (!states.contains(t.next_state)) fail(where + ": unknown state \"" + t.next_state + "\"");
    if (t.read != "#" && !letters.contains(t.read)) fail(where + ": \"" + t.read + "\" is not a letter or \"#\"");
    switch (t.action) {
      case Action::SwapHead:
      case Action::RestoreHead:
        if (t.head_index < 1 || t.head_index > m.heads) {
          fail(where + ": head_index must be in 1.." + std::to_string(m.heads));
        }
        break;
      case Action::GoBackReject:
        if (t.next_state != kRejectState) fail(where + ": reject always goes to state \"b\"");
        break;
      case Action::ReInit:
        fail(where + ": re-init is internal");
      case Action::Continue:
        break;
    }
    if (m.heads > 0 && t.state == kRejectState) {
      fail(where + ": transitions out of \"b\" are reserved to the reject gadget when heads > 0");
    }
  }
  Key clash;
  if (m.deterministic && !unique_keys(effective_transitions(m), &clash)) {
    fail("declared deterministic but (" + std::get<0>(clash) + ", " + std::get<1>(clash) + ", " +
         direction_name(std::get<2>(clash)) + ") has several transitions");
  }
}

std::vector<Transition> effective_transitions(const Automaton& m) {
  std::vector<Transition> out = m.transitions;
  if (!targets_reject(m)) return out;
  const std::string b(kRejectState);
  for (const std::string& c : m.alphabet) {
    out.push_back({b, c, Direction::L, b, Direction::R, Action::Continue, 0});
    out.push_back({b, c, Direction::R, b, Direction::L, Action::Continue, 0});
  }
  for (Direction d : {Direction::L, Direction::R}) {
    out.push_back({b, "#", d, std::string(kInitState), Direction::R, Action::ReInit, 0});
  }
  return out;
}

bool is_deterministic(const Automaton& m) { return unique_keys(effective_transitions(m), nullptr); }

std::string to_string(const Configuration& c) {
  std::string out = "(" + c.state + ", main=" + std::to_string(c.main) + ", aux=[";
  for (std::size_t i = 0; i < c.aux.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c.aux[i]);
  }
  return out + "], leaving " + direction_name(c.dir) + ")";
}

SimulationResult simulate(const Automaton& m, const std::vector<std::string>& word) {
  const auto ts = effective_transitions(m);
  const std::uint32_t size = static_cast<std::uint32_t>(word.size()) + 1;
  auto letter = [&](std::uint32_t p) { return p == 0 ? std::string("#") : word[p - 1]; };

  auto successors = [&](const Configuration& c) {
    std::vector<Configuration> out;
    const std::uint32_t pos = c.dir == Direction::L ? (c.main + 1) % size : (c.main + size - 1) % size;
    const Direction arrival = flip(c.dir);
    const std::string read = letter(pos);
    for (const Transition& t : ts) {
      if (t.state != c.state || t.read != read || t.dir != arrival) continue;
      Configuration n{t.next_state, pos, c.aux, t.next_dir};
      switch (t.action) {
        case Action::SwapHead:
        case Action::RestoreHead:
          std::swap(n.main, n.aux[t.head_index - 1]);
          break;
        case Action::ReInit:
          std::fill(n.aux.begin(), n.aux.end(), pos);
          break;
        case Action::Continue:
        case Action::GoBackReject:
          break;
      }
      out.push_back(std::move(n));
    }
    return out;
  };

  enum Colour { Grey, Black };
  std::map<Configuration, Colour> colour;
  struct Frame {
    Configuration config;
    std::vector<Configuration> next;
    std::size_t i = 0;
  };
  Configuration start{std::string(kInitState), 0, std::vector<std::uint32_t>(m.heads, 0), Direction::R};
  std::vector<Frame> stack;
  stack.push_back({start, successors(start), 0});
  colour[start] = Grey;
  SimulationResult r;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.i == f.next.size()) {
      colour[f.config] = Black;
      stack.pop_back();
      continue;
    }
    Configuration w = f.next[f.i++];
    auto it = colour.find(w);
    if (it == colour.end()) {
      colour.emplace(w, Grey);
      auto next = successors(w);
      stack.push_back({std::move(w), std::move(next), 0});
    } else if (it->second == Grey) {
      r.halts = false;
      auto from = std::find_if(stack.begin(), stack.end(), [&](const Frame& s) { return s.config == w; });
      for (auto s = from; s != stack.end(); ++s) r.cycle.push_back(s->config);
      break;
    }
  }
  r.visited = colour.size();
  return r;
}

std::string state_constant_name(std::string_view state, const std::vector<std::string>& memory) {
  if (state == kRejectState || std::all_of(memory.begin(), memory.end(), [](const std::string& c) { return c == "#"; })) {
    return std::string(state);
  }
  std::string out = std::string(state) + "_";
  for (const std::string& c : memory) out += "_" + (c == "#" ? std::string() : c);
  return out;
}

Observation compile(const Automaton& m, SymbolTable& symbols) {
  validate(m);
  const std::uint32_t k = m.heads;
  const Symbol* a_symbol = k == 0 ? symbols.intern("A0", 0) : symbols.intern("A", k);
  auto letter = [&](const std::string& c) { return Term::constant(symbols.intern(c, 0)); };
  auto dir = [](Direction d) { return Term::constant(d == Direction::L ? reserved::left() : reserved::right()); };
  auto state = [&](std::string_view s, const std::vector<std::string>& mem) {
    return Term::constant(symbols.intern(state_constant_name(s, mem), 0));
  };
  auto aux = [&](const std::vector<Term>& hs) { return k == 0 ? Term::constant(a_symbol) : Term::apply(a_symbol, hs); };
  auto mem_term = [](const Term& h) { return Term::apply(reserved::memory(), {h}); };
  auto config = [&](Term c, Direction d, Term s, Term a, Term p) {
    const Term parts[] = {std::move(c), dir(d), std::move(s), std::move(a), mem_term(p)};
    return Term::chain(parts);
  };

  const Term h0 = Term::variable(0);
  std::vector<Term> hs;
  for (std::uint32_t i = 1; i <= k; ++i) hs.push_back(Term::variable(i));

  std::vector<std::string> cells{"#"};
  cells.insert(cells.end(), m.alphabet.begin(), m.alphabet.end());
  std::vector<std::vector<std::string>> memories{{}};
  for (std::uint32_t i = 0; i < k; ++i) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : memories) {
      for (const std::string& c : cells) {
        next.push_back(prefix);
        next.back().push_back(c);
      }
    }
    memories = std::move(next);
  }

  std::vector<Flow> flows;
  for (const Transition& t : effective_transitions(m)) {
    const bool from_reject = t.state == kRejectState;
    for (const auto& mem : memories) {
      const auto& from_mem = from_reject ? memories.front() : mem;
      if (from_reject && &mem != &memories.front()) break;
      Term body = config(letter(t.read), t.dir, state(t.state, from_mem), aux(hs), h0);
      Term head = [&] {
        switch (t.action) {
          case Action::SwapHead:
          case Action::RestoreHead: {
            const std::size_t i = t.head_index - 1;
            std::vector<std::string> mem2 = mem;
            mem2[i] = t.read;
            std::vector<Term> hs2 = hs;
            hs2[i] = h0;
            return config(letter(mem[i]), t.next_dir, state(t.next_state, mem2), aux(hs2), hs[i]);
          }
          case Action::ReInit:
            return config(letter("#"), Direction::R, state(kInitState, {}), aux(std::vector<Term>(k, h0)), h0);
          case Action::GoBackReject:
          case Action::Continue:
            break;
        }
        return config(letter(t.read), t.next_dir, state(t.next_state, from_mem), aux(hs), h0);
      }();
      flows.emplace_back(std::move(head), std::move(body));
    }
  }
  return Observation{Wiring(std::move(flows)), Alphabet(m.alphabet, symbols)};
}

std::vector<std::vector<std::string>> all_words(const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::vector<std::vector<std::string>> out{{}};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (const std::string& c : alphabet) {
        auto w = out[i];
        w.push_back(c);
        out.push_back(std::move(w));
      }
    }
    level_start = level_end;
  }
  return out;
}

CrossValidationReport cross_validate(const Automaton& m, const std::vector<std::vector<std::string>>& words,
                                     const AcceptOptions& options) {
  SymbolTable symbols;
  Observation o = compile(m, symbols);
  CrossValidationReport report;
  const bool wide = std::any_of(m.alphabet.begin(), m.alphabet.end(), [](const std::string& c) { return c.size() > 1; });
  for (const auto& w : words) {
    CrossValidationEntry e;
    Word letters;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (wide && i) e.word += ",";
      e.word += w[i];
      letters.push_back(symbols.intern(w[i], 0));
    }
    e.halts = simulate(m, w).halts;
    e.accepted = accepts(o, letters, symbols, options).accepted;
    report.entries.push_back(e);
    if (e.halts != e.accepted) report.mismatches.push_back(e);
  }
  return report;
}

}  // namespace unisem
