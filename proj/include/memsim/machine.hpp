#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "memsim/errors.hpp"
#include "memsim/history_store.hpp"

namespace memsim {

using StateId = std::uint32_t;

enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };

char move_letter(Move m);

struct Rule {
  StateId next_state;
  SymbolId write;
  Move move;

  bool operator==(const Rule&) const = default;
};

// Everything parse_machine can object to.
class ParseError : public Error {
 public:
  enum class Kind {
    Syntax,
    MissingHeader,
    DuplicateRule,
    RuleOnHaltingState,
    UndeclaredStateOrSymbol,
  };

  ParseError(Kind kind, int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

// A deterministic single-tape machine. States and symbols are dense ids;
// symbol glyphs are single UTF-8 code points with '_' reserved for blank.
class MachineSpec {
 public:
  const std::string& name() const { return name_; }
  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_symbols() const { return symbol_glyphs_.size(); }
  SymbolId blank() const { return blank_; }
  StateId start() const { return start_; }
  bool is_halting(StateId s) const { return halting_[s]; }

  const std::string& state_name(StateId s) const { return state_names_[s]; }
  const std::string& symbol_glyph(SymbolId a) const { return symbol_glyphs_[a]; }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<SymbolId> find_symbol(std::string_view glyph) const;

  const std::optional<Rule>& rule(StateId state, SymbolId symbol) const {
    return rules_[state * num_symbols() + symbol];
  }
  std::size_t rule_count() const { return rule_count_; }

  // Maps an input string (one glyph per symbol) to symbol ids.
  std::vector<SymbolId> parse_input(std::string_view text) const;
  std::string render_symbols(const std::vector<SymbolId>& symbols) const;

  // Minimum bits to distinguish alphabet symbols (at least 1).
  std::uint32_t symbol_bits() const;

  friend MachineSpec parse_machine(const std::string& text);

 private:
  std::string name_ = "anonymous";
  std::vector<std::string> state_names_;
  std::vector<std::string> symbol_glyphs_;
  std::unordered_map<std::string, StateId> state_ids_;
  std::unordered_map<std::string, SymbolId> symbol_ids_;
  std::vector<bool> halting_;
  std::vector<std::optional<Rule>> rules_;
  SymbolId blank_ = 0;
  StateId start_ = 0;
  std::size_t rule_count_ = 0;
};

// Parses the line-oriented machine format:
//   machine <name>
//   blank <sym>
//   start <state>
//   halt <state> [<state>...]
//   <state> <sym> -> <state> <sym> <L|R|S>
// '#' starts a comment. Optional `states ...` / `alphabet ...` lines pin the
// declared sets; without them the sets are inferred from headers and rules.
MachineSpec parse_machine(const std::string& text);

MachineSpec parse_machine_file(const std::string& path);

// The complete instantaneous description of a run: state, head position,
// symbol under the head, step counter.
struct Configuration {
  StateId state = 0;
  Position head = 0;
  SymbolId under_head = 0;
  Timestamp step = 0;

  bool operator==(const Configuration&) const = default;
};

struct TraceRecord {
  Configuration config;
  bool halted = false;

  bool operator==(const TraceRecord&) const = default;
};

enum class StepKind { Transition, Halt, Undefined };

struct StepOutcome {
  StepKind kind;
  Rule rule;  // valid only when kind == Transition
};

// Transition lookup: halt-signal on halting states, undefined-signal where
// the partial table has no rule.
StepOutcome delta(const MachineSpec& spec, StateId state, SymbolId symbol);

// The machine is stuck: no rule for (state, symbol under head).
class UndefinedTransition : public Error {
 public:
  UndefinedTransition(const Configuration& config, const std::string& message)
      : Error(message), config_(config) {}
  const Configuration& config() const { return config_; }

 private:
  Configuration config_;
};

enum class StopReason { Halted, StepLimit };

struct RunResult {
  std::vector<TraceRecord> trace;
  StopReason reason = StopReason::Halted;

  bool halted() const { return reason == StopReason::Halted; }
};

// One line per record: t<TAB>state<TAB>head<TAB>symbol<TAB>halted(0|1)
std::string trace_line(const MachineSpec& spec, const TraceRecord& rec);
std::string render_trace(const MachineSpec& spec, const std::vector<TraceRecord>& trace);

}  // namespace memsim
