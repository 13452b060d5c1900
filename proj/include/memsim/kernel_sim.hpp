#pragma once

#include <string>
#include <vector>

#include "memsim/history_store.hpp"
#include "memsim/machine.hpp"

namespace memsim {

// The machine state of the history-backed simulator: one Configuration plus
// the write log. There is deliberately no tape, array or cell cache here -
// every symbol the simulator ever sees comes from read_latest.
//
// Invariants: config.under_head == read_latest(history, config.head,
// config.step), and history holds exactly |input| + executed-steps entries.
struct KernelState {
  Configuration config;
  HistoryStore history;

  KernelState(std::uint32_t alphabet_size, SymbolId blank)
      : history(alphabet_size, blank) {}
};

// Seeds the input at timestamp 0 and positions the head on cell 0.
KernelState kernel_init(const MachineSpec& spec, const std::vector<SymbolId>& input);

// One transition: writes the new symbol at timestamp t+1, moves, then reads
// the arrival cell back out of history at time t+1 (so a Stay move sees its
// own write). Returns false (halt-signal, nothing written) when the current
// state is halting; throws UndefinedTransition when stuck.
bool kernel_step(KernelState& state, const MachineSpec& spec);

RunResult run_kernel(const MachineSpec& spec, const std::vector<SymbolId>& input,
                     std::uint64_t max_steps);

// Symbols at positions lo..hi inclusive, as of the current step.
std::vector<SymbolId> reconstruct_tape(const KernelState& state, Position lo, Position hi);

// tape<TAB>lo<TAB>hi<TAB><symbols>
std::string tape_snapshot_line(const MachineSpec& spec, const KernelState& state, Position lo,
                               Position hi);

}  // namespace memsim
