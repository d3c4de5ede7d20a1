#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "unisem/words.hpp"

namespace unisem {

enum class Direction { L, R };

enum class Action {
  Continue,
  SwapHead,
  RestoreHead,
  GoBackReject,
  ReInit,  // only in the reject gadget
};

struct Transition {
  std::string state;
  std::string read;  // a letter or "#"
  Direction dir = Direction::L;  // flag the main head arrives with
  std::string next_state;
  Direction next_dir = Direction::L;  // flag it leaves with
  Action action = Action::Continue;
  std::uint32_t head_index = 0;  // 1..heads for swap/restore
};

/// Two-way automaton with one main head and `heads` auxiliary heads on the
/// cyclic input # c1 ... cn. Leaving with L moves to the next position and
/// arrives with R; leaving with R moves to the previous one and arrives with
/// L. Acceptance is halting.
struct Automaton {
  std::vector<std::string> states;  // contains "init"
  std::vector<std::string> alphabet;
  std::uint32_t heads = 0;
  std::vector<Transition> transitions;
  bool deterministic = false;
};

inline constexpr std::string_view kInitState = "init";
inline constexpr std::string_view kRejectState = "b";

/// JSON description; see README for the schema. Throws Error(Automaton).
Automaton parse_automaton(std::string_view json_text);
/// Throws Error(Automaton) on unknown states or letters, bad head indices,
/// a false `deterministic` claim, or transitions out of `b` with aux heads.
void validate(const Automaton& m);

/// User transitions plus, when `b` is a target, the go-back gadget:
/// (b,c,L) -> exit R and (b,c,R) -> exit L for each letter c, and re-init
/// from (b,#,L) and (b,#,R).
std::vector<Transition> effective_transitions(const Automaton& m);
bool is_deterministic(const Automaton& m);

struct Configuration {
  std::string state;
  std::uint32_t main = 0;
  std::vector<std::uint32_t> aux;
  Direction dir = Direction::R;  // flag the main head leaves with

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

std::string to_string(const Configuration& c);

struct SimulationResult {
  bool halts = true;
  std::vector<Configuration> cycle;  // reachable loop when !halts
  std::size_t visited = 0;
};

/// Explores every run from (init, main = aux = 0, leaving with R).
SimulationResult simulate(const Automaton& m, const std::vector<std::string>& word);

/// One flow per effective transition (and per remembered aux symbols when
/// heads > 0), of the shape letter * dir * state * A(h1..hk) * M(h0), with
/// head = next configuration and body = current one.
Observation compile(const Automaton& m, SymbolTable& symbols);

/// State constant name carrying the letters under the aux heads.
std::string state_constant_name(std::string_view state, const std::vector<std::string>& memory);

struct CrossValidationEntry {
  std::string word;
  bool halts = false;
  bool accepted = false;
};

struct CrossValidationReport {
  std::vector<CrossValidationEntry> entries;
  std::vector<CrossValidationEntry> mismatches;
};

/// Every word over the alphabet of length <= max_len, shortest first.
std::vector<std::vector<std::string>> all_words(const std::vector<std::string>& alphabet, std::size_t max_len);

CrossValidationReport cross_validate(const Automaton& m, const std::vector<std::vector<std::string>>& words,
                                     const AcceptOptions& options = {});

}  // namespace unisem
