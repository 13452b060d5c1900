#include "memsim/verify.hpp"

#include <algorithm>
#include <random>

namespace memsim {

namespace {

std::string config_text(const MachineSpec& spec, const TraceRecord& r) {
  return "(" + spec.state_name(r.config.state) + "," + std::to_string(r.config.head) + ",'" +
         spec.symbol_glyph(r.config.under_head) + "'," + std::to_string(r.config.step) +
         (r.halted ? ",halted)" : ")");
}

// Applies the pending fault once the target entry exists.
struct FaultArming {
  std::optional<FaultInjection> fault;
  bool applied = false;

  void poll(HistoryStore& history) {
    if (applied || !fault) return;
    if (history.entry_count() > fault->entry_index) {
      history.corrupt_entry(fault->entry_index);
      applied = true;
    }
  }
};

struct Probe {
  Position position;
  Timestamp time;
};

}  // namespace

std::string CoherenceReport::to_line() const {
  std::string line = passed ? "PASS" : "FAIL";
  line += '\t';
  line += machine;
  line += '\t';
  line += input;
  line += '\t';
  line += detail;
  return line;
}

std::string ConsistencyReport::to_line() const {
  std::string line = passed ? "PASS" : "FAIL";
  line += '\t';
  line += machine;
  line += '\t';
  line += input;
  line += '\t';
  line += detail;
  return line;
}

CoherenceReport check_coherence(const MachineSpec& spec, const std::vector<SymbolId>& input,
                                std::uint64_t max_steps, std::optional<FaultInjection> fault) {
  CoherenceReport report;
  report.machine = spec.name();
  report.input = spec.render_symbols(input);

  KernelState kernel = kernel_init(spec, input);
  DirectSim oracle(spec, input);
  FaultArming arming{fault};
  arming.poll(kernel.history);

  for (;;) {
    const TraceRecord k{kernel.config, spec.is_halting(kernel.config.state)};
    const TraceRecord o = oracle.record();
    ++report.steps_checked;
    if (k != o) {
      report.first_divergence = Divergence{o.config.step, k, o};
      report.passed = false;
      report.detail = "diverged at t=" + std::to_string(o.config.step) +
                      " kernel=" + config_text(spec, k) + " oracle=" + config_text(spec, o);
      return report;
    }
    if (k.halted || k.config.step >= max_steps) break;

    bool kernel_stuck = false, oracle_stuck = false;
    Configuration kernel_stuck_at, oracle_stuck_at;
    try {
      kernel_step(kernel, spec);
      arming.poll(kernel.history);
    } catch (const UndefinedTransition& e) {
      kernel_stuck = true;
      kernel_stuck_at = e.config();
    } catch (const IntegrityViolation& e) {
      throw IntegrityViolation("kernel: " + std::string(e.what()));
    }
    try {
      oracle.step();
    } catch (const UndefinedTransition& e) {
      oracle_stuck = true;
      oracle_stuck_at = e.config();
    }
    if (kernel_stuck || oracle_stuck) {
      if (kernel_stuck && oracle_stuck && kernel_stuck_at == oracle_stuck_at) {
        break;  // both stuck in the same configuration: still coherent
      }
      throw UndefinedTransition(kernel_stuck ? kernel_stuck_at : oracle_stuck_at,
                                std::string(kernel_stuck ? "kernel" : "oracle") +
                                    ": one-sided undefined transition in machine " + spec.name());
    }
  }

  report.passed = true;
  report.detail = "steps=" + std::to_string(report.steps_checked);
  return report;
}

ConsistencyReport check_consistency(const MachineSpec& spec, const std::vector<SymbolId>& input,
                                    const ConsistencyOptions& options) {
  ConsistencyReport report;
  report.machine = spec.name();
  report.input = spec.render_symbols(input);

  // Run the kernel to get the history under test.
  KernelState kernel = kernel_init(spec, input);
  FaultArming arming{options.fault};
  arming.poll(kernel.history);
  try {
    while (!spec.is_halting(kernel.config.state) && kernel.config.step < options.max_steps) {
      kernel_step(kernel, spec);
      arming.poll(kernel.history);
    }
  } catch (const IntegrityViolation& e) {
    throw IntegrityViolation("kernel: " + std::string(e.what()));
  }
  const Timestamp last_step = kernel.config.step;

  // First oracle pass: per-step visited bounds.
  std::vector<Position> lo_at(last_step + 1), hi_at(last_step + 1);
  {
    DirectSim oracle(spec, input);
    lo_at[0] = oracle.min_visited();
    hi_at[0] = oracle.max_visited();
    for (Timestamp t = 1; t <= last_step; ++t) {
      oracle.step();
      lo_at[t] = oracle.min_visited();
      hi_at[t] = oracle.max_visited();
    }
  }

  // Probe set: exhaustive over the visited span when it is small, seeded
  // sampling otherwise. One fringe cell on each side exercises the
  // never-written-reads-blank agreement.
  std::vector<Probe> probes;
  const auto span = static_cast<std::size_t>(hi_at[last_step] - lo_at[last_step] + 1);
  if (span < options.exhaustive_cell_limit) {
    probes.reserve((span + 2) * (last_step + 1));
    for (Timestamp t = 0; t <= last_step; ++t) {
      for (Position p = lo_at[last_step] - 1; p <= hi_at[last_step] + 1; ++p) {
        probes.push_back({p, t});
      }
    }
  } else {
    // Keep the probe set bounded on very long runs by thinning the probed
    // steps, never the per-step rate.
    constexpr std::size_t kMaxProbes = std::size_t{1} << 22;
    const std::uint64_t stride =
        std::max<std::uint64_t>(1, (last_step + 1) * options.probes_per_step / kMaxProbes);
    std::mt19937_64 rng(options.seed);
    for (Timestamp t = 0; t <= last_step; t += stride) {
      for (std::uint32_t i = 0; i < options.probes_per_step; ++i) {
        const Timestamp when = rng() % (t + 1);
        const auto width = static_cast<std::uint64_t>(hi_at[t] - lo_at[t] + 3);
        const Position where = lo_at[t] - 1 + static_cast<Position>(rng() % width);
        probes.push_back({where, when});
      }
    }
  }
  std::stable_sort(probes.begin(), probes.end(),
                   [](const Probe& a, const Probe& b) { return a.time < b.time; });

  // Second oracle pass answers the probes in chronological order.
  DirectSim oracle(spec, input);
  std::size_t next = 0;
  for (Timestamp t = 0; t <= last_step; ++t) {
    if (t > 0) oracle.step();
    for (; next < probes.size() && probes[next].time == t; ++next) {
      const Probe& probe = probes[next];
      SymbolId from_history;
      try {
        from_history = kernel.history.read_latest(probe.position, probe.time);
      } catch (const IntegrityViolation& e) {
        throw IntegrityViolation("kernel: " + std::string(e.what()));
      }
      const SymbolId from_tape = oracle.cell(probe.position);
      ++report.cells_checked;
      if (from_history != from_tape) {
        report.mismatches.push_back({probe.position, probe.time, from_history, from_tape});
      }
    }
  }

  report.passed = report.mismatches.empty();
  if (report.passed) {
    report.detail = "cells=" + std::to_string(report.cells_checked);
  } else {
    const CellMismatch& m = report.mismatches.front();
    report.detail = "mismatches=" + std::to_string(report.mismatches.size()) +
                    " first=(p=" + std::to_string(m.position) + ",t=" + std::to_string(m.time) +
                    ",history='" + spec.symbol_glyph(m.history_symbol) + "',oracle='" +
                    spec.symbol_glyph(m.oracle_symbol) + "')";
  }
  return report;
}

}  // namespace memsim
