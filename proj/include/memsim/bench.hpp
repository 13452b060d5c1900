#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "memsim/machine.hpp"

namespace memsim {

// One instrumented step. `comparisons` counts timestamp comparisons spent in
// that step's history read; `probe_position`/`probe_writes` identify the
// queried cell and how many writes it had at read time (these two back the
// per-read log bound check and are not part of the CSV).
struct OverheadSample {
  std::uint64_t t = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t entries = 0;
  std::uint32_t step_bits = 0;      // ceil(log2(t+1))
  std::uint32_t position_bits = 0;  // ceil(log2(max|p| + 2)) over the run so far
  std::uint64_t wall_time_ns = 0;
  Position probe_position = 0;
  std::uint64_t probe_writes = 0;
};

// Fixed framing allowance in the per-entry space budget: the 64 checksum
// bits plus 4 bits of encoding slop.
inline constexpr std::uint64_t kEntryBitBudgetConstant = 68;

struct OverheadReport {
  std::string machine;
  std::string input;
  std::uint32_t symbol_bits = 0;
  std::uint64_t steps = 0;
  std::uint64_t total_comparisons = 0;  // across every step, not just samples
  std::uint64_t max_entry_storable_bits = 0;
  // Entries whose storable size exceeds kEntryBitBudgetConstant +
  // symbol_bits + ceil(log2(t+1)) + ceil(log2(|p|+2)) in their own (t, p)
  // context. Zero when the log-space claim holds.
  std::uint64_t entries_over_bit_budget = 0;
  std::vector<OverheadSample> samples;

  double mean_comparisons_per_step() const {
    return steps == 0 ? 0.0 : static_cast<double>(total_comparisons) / static_cast<double>(steps);
  }
};

// Runs the kernel with sampling at power-of-two steps (plus the final step).
// Instrumentation never changes what the simulation computes: the trace is
// byte-identical to run_kernel's.
OverheadReport run_instrumented(const MachineSpec& spec, const std::vector<SymbolId>& input,
                                std::uint64_t max_steps);

// t,comparisons,entries,step_bits,position_bits,wall_time_ns
void write_csv(std::ostream& out, const OverheadReport& report);

struct ScalingVerdict {
  double log_slope = 0;      // comparisons per doubling of t
  double log_residual = 0;   // sum of squared residuals of the log2(t) fit
  double linear_slope = 0;   // comparisons per step
  double linear_residual = 0;
  bool logarithmic_consistent = false;

  std::string to_string() const;
};

// Least-squares fits of the comparison series against log2(t) and against t.
// Logarithmic-consistent when the log fit explains the data at least as well
// and the linear slope is negligible. Needs >= 16 samples spanning >= 3
// octaves of t.
ScalingVerdict fit_scaling(const OverheadReport& report);

}  // namespace memsim
