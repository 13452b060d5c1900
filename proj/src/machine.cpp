#include "memsim/machine.hpp"

#include <fstream>
#include <sstream>

#include "memsim/bits.hpp"

namespace memsim {

namespace {

// Splits a UTF-8 string into code points; empty result element means the
// input was malformed.
bool utf8_split(std::string_view text, std::vector<std::string>& out) {
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
    } else {
      return false;
    }
    if (i + len > text.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return false;
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return true;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

struct RawRule {
  int line;
  std::string state, read, next, write, move;
};

bool is_single_glyph(const std::string& token) {
  std::vector<std::string> cps;
  return utf8_split(token, cps) && cps.size() == 1;
}

}  // namespace

char move_letter(Move m) {
  switch (m) {
    case Move::Left:
      return 'L';
    case Move::Right:
      return 'R';
    default:
      return 'S';
  }
}

std::optional<StateId> MachineSpec::find_state(std::string_view name) const {
  auto it = state_ids_.find(std::string(name));
  if (it == state_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolId> MachineSpec::find_symbol(std::string_view glyph) const {
  auto it = symbol_ids_.find(std::string(glyph));
  if (it == symbol_ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<SymbolId> MachineSpec::parse_input(std::string_view text) const {
  std::vector<std::string> glyphs;
  if (!utf8_split(text, glyphs)) {
    throw UnknownSymbol("input is not valid UTF-8");
  }
  std::vector<SymbolId> out;
  out.reserve(glyphs.size());
  for (const std::string& g : glyphs) {
    auto id = find_symbol(g);
    if (!id) {
      throw UnknownSymbol("input symbol '" + g + "' not in the alphabet of machine " + name_);
    }
    out.push_back(*id);
  }
  return out;
}

std::string MachineSpec::render_symbols(const std::vector<SymbolId>& symbols) const {
  std::string out;
  for (SymbolId a : symbols) out += symbol_glyphs_[a];
  return out;
}

std::uint32_t MachineSpec::symbol_bits() const {
  const std::uint32_t bits = ceil_log2(num_symbols());
  return bits == 0 ? 1 : bits;
}

MachineSpec parse_machine(const std::string& text) {
  MachineSpec spec;

  std::optional<std::string> blank_glyph;
  std::optional<std::string> start_name;
  std::vector<std::pair<int, std::string>> halt_names;
  std::vector<std::string> declared_states, declared_symbols;
  bool have_state_decl = false, have_symbol_decl = false;
  bool have_name = false;
  std::vector<RawRule> raw_rules;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;

    const std::string& head = tok[0];
    if (head == "machine") {
      if (tok.size() != 2) throw ParseError(ParseError::Kind::Syntax, line_no, "expected: machine <name>");
      if (have_name) throw ParseError(ParseError::Kind::Syntax, line_no, "duplicate machine header");
      spec.name_ = tok[1];
      have_name = true;
    } else if (head == "blank") {
      if (tok.size() != 2) throw ParseError(ParseError::Kind::Syntax, line_no, "expected: blank <sym>");
      if (blank_glyph) throw ParseError(ParseError::Kind::Syntax, line_no, "duplicate blank header");
      blank_glyph = tok[1];
    } else if (head == "start") {
      if (tok.size() != 2) throw ParseError(ParseError::Kind::Syntax, line_no, "expected: start <state>");
      if (start_name) throw ParseError(ParseError::Kind::Syntax, line_no, "duplicate start header");
      start_name = tok[1];
    } else if (head == "halt") {
      if (tok.size() < 2) throw ParseError(ParseError::Kind::Syntax, line_no, "halt needs at least one state");
      for (std::size_t i = 1; i < tok.size(); ++i) halt_names.emplace_back(line_no, tok[i]);
    } else if (head == "states") {
      if (tok.size() < 2) throw ParseError(ParseError::Kind::Syntax, line_no, "states needs at least one name");
      declared_states.insert(declared_states.end(), tok.begin() + 1, tok.end());
      have_state_decl = true;
    } else if (head == "alphabet") {
      if (tok.size() < 2) throw ParseError(ParseError::Kind::Syntax, line_no, "alphabet needs at least one symbol");
      declared_symbols.insert(declared_symbols.end(), tok.begin() + 1, tok.end());
      have_symbol_decl = true;
    } else {
      if (tok.size() != 6 || tok[2] != "->") {
        throw ParseError(ParseError::Kind::Syntax, line_no,
                         "expected: <state> <sym> -> <state> <sym> <L|R|S>");
      }
      raw_rules.push_back(RawRule{line_no, tok[0], tok[1], tok[3], tok[4], tok[5]});
    }
  }

  if (!blank_glyph) throw ParseError(ParseError::Kind::MissingHeader, line_no, "missing blank header");
  if (!start_name) throw ParseError(ParseError::Kind::MissingHeader, line_no, "missing start header");
  if (halt_names.empty()) throw ParseError(ParseError::Kind::MissingHeader, line_no, "missing halt header");

  // Declared sets: explicit declarations when given, otherwise every
  // mention in headers and rules, in order of first appearance.
  auto add_state = [&](const std::string& name, int at_line) -> StateId {
    auto it = spec.state_ids_.find(name);
    if (it != spec.state_ids_.end()) return it->second;
    if (have_state_decl) {
      throw ParseError(ParseError::Kind::UndeclaredStateOrSymbol, at_line,
                       "state '" + name + "' not in the states declaration");
    }
    const StateId id = static_cast<StateId>(spec.state_names_.size());
    spec.state_names_.push_back(name);
    spec.state_ids_.emplace(name, id);
    return id;
  };
  auto add_symbol = [&](const std::string& glyph, int at_line) -> SymbolId {
    if (!is_single_glyph(glyph)) {
      throw ParseError(ParseError::Kind::Syntax, at_line,
                       "symbol '" + glyph + "' is not a single character");
    }
    auto it = spec.symbol_ids_.find(glyph);
    if (it != spec.symbol_ids_.end()) return it->second;
    if (have_symbol_decl) {
      throw ParseError(ParseError::Kind::UndeclaredStateOrSymbol, at_line,
                       "symbol '" + glyph + "' not in the alphabet declaration");
    }
    const SymbolId id = static_cast<SymbolId>(spec.symbol_glyphs_.size());
    spec.symbol_glyphs_.push_back(glyph);
    spec.symbol_ids_.emplace(glyph, id);
    return id;
  };

  if (have_state_decl) {
    for (const std::string& s : declared_states) {
      if (!spec.state_ids_.contains(s)) {
        spec.state_ids_.emplace(s, static_cast<StateId>(spec.state_names_.size()));
        spec.state_names_.push_back(s);
      }
    }
  }
  if (have_symbol_decl) {
    for (const std::string& g : declared_symbols) {
      if (!is_single_glyph(g)) {
        throw ParseError(ParseError::Kind::Syntax, 0, "symbol '" + g + "' is not a single character");
      }
      if (!spec.symbol_ids_.contains(g)) {
        spec.symbol_ids_.emplace(g, static_cast<SymbolId>(spec.symbol_glyphs_.size()));
        spec.symbol_glyphs_.push_back(g);
      }
    }
  }

  spec.blank_ = add_symbol(*blank_glyph, 0);
  spec.start_ = add_state(*start_name, 0);
  std::vector<StateId> halting;
  for (const auto& [at_line, name] : halt_names) halting.push_back(add_state(name, at_line));
  for (const RawRule& r : raw_rules) {
    add_state(r.state, r.line);
    add_symbol(r.read, r.line);
    add_state(r.next, r.line);
    add_symbol(r.write, r.line);
  }

  // '_' may appear only as the blank symbol.
  if (auto underscore = spec.find_symbol("_"); underscore && *underscore != spec.blank_) {
    throw ParseError(ParseError::Kind::Syntax, 0, "'_' is reserved for the blank symbol");
  }

  spec.halting_.assign(spec.num_states(), false);
  for (StateId h : halting) spec.halting_[h] = true;

  spec.rules_.assign(spec.num_states() * spec.num_symbols(), std::nullopt);
  for (const RawRule& r : raw_rules) {
    const StateId s = *spec.find_state(r.state);
    const SymbolId a = *spec.find_symbol(r.read);
    if (spec.halting_[s]) {
      throw ParseError(ParseError::Kind::RuleOnHaltingState, r.line,
                       "rule keyed on halting state '" + r.state + "'");
    }
    Move move;
    if (r.move == "L") {
      move = Move::Left;
    } else if (r.move == "R") {
      move = Move::Right;
    } else if (r.move == "S") {
      move = Move::Stay;
    } else {
      throw ParseError(ParseError::Kind::Syntax, r.line, "move must be L, R or S, got '" + r.move + "'");
    }
    auto& slot = spec.rules_[s * spec.num_symbols() + a];
    if (slot.has_value()) {
      throw ParseError(ParseError::Kind::DuplicateRule, r.line,
                       "second rule for (" + r.state + ", " + r.read + ")");
    }
    slot = Rule{*spec.find_state(r.next), *spec.find_symbol(r.write), move};
    ++spec.rule_count_;
  }

  return spec;
}

MachineSpec parse_machine_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open machine file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

StepOutcome delta(const MachineSpec& spec, StateId state, SymbolId symbol) {
  if (spec.is_halting(state)) return {StepKind::Halt, {}};
  const auto& rule = spec.rule(state, symbol);
  if (!rule) return {StepKind::Undefined, {}};
  return {StepKind::Transition, *rule};
}

std::string trace_line(const MachineSpec& spec, const TraceRecord& rec) {
  std::string out = std::to_string(rec.config.step);
  out += '\t';
  out += spec.state_name(rec.config.state);
  out += '\t';
  out += std::to_string(rec.config.head);
  out += '\t';
  out += spec.symbol_glyph(rec.config.under_head);
  out += '\t';
  out += rec.halted ? '1' : '0';
  return out;
}

std::string render_trace(const MachineSpec& spec, const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const TraceRecord& rec : trace) {
    out += trace_line(spec, rec);
    out += '\n';
  }
  return out;
}

}  // namespace memsim
