#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memsim/direct_sim.hpp"
#include "memsim/kernel_sim.hpp"
#include "memsim/machine.hpp"

namespace memsim {

// Test/CLI fault plumbing: once the kernel's history holds more than
// `entry_index` entries, that entry's symbol field is corrupted in place.
struct FaultInjection {
  std::size_t entry_index = 0;
};

struct Divergence {
  std::uint64_t step;
  TraceRecord kernel;
  TraceRecord oracle;
};

// Step-by-step configuration equality between the history-backed run and
// the direct-tape run.
struct CoherenceReport {
  std::string machine;
  std::string input;
  std::uint64_t steps_checked = 0;
  std::optional<Divergence> first_divergence;
  bool passed = false;
  std::string detail;  // human-readable tail of to_line()

  std::string to_line() const;
};

struct CellMismatch {
  Position position;
  Timestamp time;
  SymbolId history_symbol;
  SymbolId oracle_symbol;
};

// read_latest agreement with the oracle tape over sampled or exhaustive
// (position, time) probes.
struct ConsistencyReport {
  std::string machine;
  std::string input;
  std::uint64_t cells_checked = 0;
  std::vector<CellMismatch> mismatches;
  bool passed = false;
  std::string detail;

  std::string to_line() const;
};

// Runs both simulators in lockstep and compares every trace record up to
// halt or max_steps. Simulator errors propagate with the failing side named
// in the message.
CoherenceReport check_coherence(const MachineSpec& spec, const std::vector<SymbolId>& input,
                                std::uint64_t max_steps,
                                std::optional<FaultInjection> fault = std::nullopt);

struct ConsistencyOptions {
  std::uint64_t max_steps = 1'000'000;
  std::uint32_t probes_per_step = 64;  // sampled mode
  std::uint64_t seed = 0;
  // Runs visiting fewer distinct cells than this are probed exhaustively:
  // every (position, time) pair over the visited range.
  std::size_t exhaustive_cell_limit = 1000;
  std::optional<FaultInjection> fault;
};

// Checks read_latest(p, t) against the direct tape as of step t. Probes are
// generated per step (times <= that step, seeded) and answered by a single
// chronological replay of the direct simulator; sound because appends never
// change the result of an earlier-time query.
ConsistencyReport check_consistency(const MachineSpec& spec, const std::vector<SymbolId>& input,
                                    const ConsistencyOptions& options);

}  // namespace memsim
