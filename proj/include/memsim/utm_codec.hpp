#pragma once

#include <string>
#include <string_view>

#include "memsim/machine.hpp"

namespace memsim::utm {

// One transition of a simulated 2-state machine: the digit to write, the
// head move ('L'/'R') and the next state ('A'/'B'/'H').
struct ProgramEntry {
  char write;
  char move;
  char next;
};

// A total 2-state 2-symbol machine over {0,1} with 0 as blank, the class
// machines/utm.tm interprets. Its head must never move left of cell 0.
struct TwoStateProgram {
  ProgramEntry a0, a1, b0, b1;
};

// Tape for machines/utm.tm: rule table, separator, state cell, separator,
// then the program's input with the head cell marked (0 -> x, 1 -> y).
std::string encode_tape(const TwoStateProgram& program, std::string_view input01);

// The same program as standalone machine text, for running it directly.
std::string machine_text(const TwoStateProgram& program, const std::string& name);

// Recovers the simulated tape from an interpreter tape: everything right of
// the second '=', with marks lowered back to digits and trailing blanks
// removed.
std::string decode_tape(std::string_view utm_tape);

// The committed demo program: increments a least-significant-digit-first
// binary numeral (A clears 1s rightward, the first 0 becomes 1 and halts).
TwoStateProgram demo_increment_program();

}  // namespace memsim::utm
