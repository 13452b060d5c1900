// Acceptance suite: every criterion prints one PASS/FAIL line with its
// runtime against a hard budget. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "memsim/bench.hpp"
#include "memsim/bits.hpp"
#include "memsim/direct_sim.hpp"
#include "memsim/kernel_sim.hpp"
#include "memsim/threshold.hpp"
#include "memsim/utm_codec.hpp"
#include "memsim/verify.hpp"
#include "test_support.hpp"

using namespace memsim;

namespace {

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

constexpr std::uint64_t kLemmaStepLimit = 10'000;

bool lemma1_coherence(std::string& detail) {
  std::size_t machines = 0, checks = 0;
  for (const auto& entry : test::corpus()) {
    const MachineSpec spec = test::load_machine(entry.machine);
    ++machines;
    for (const std::string& input : entry.inputs) {
      const CoherenceReport report =
          check_coherence(spec, spec.parse_input(input), kLemmaStepLimit);
      ++checks;
      if (!report.passed) {
        detail = report.to_line();
        return false;
      }
    }
  }
  detail = std::to_string(machines) + " machines, " + std::to_string(checks) +
           " inputs, exact equality";
  return machines >= 5;
}

bool lemma2_consistency(std::string& detail) {
  std::uint64_t cells = 0;
  for (const auto& entry : test::corpus()) {
    const MachineSpec spec = test::load_machine(entry.machine);
    for (const std::string& input : entry.inputs) {
      ConsistencyOptions options;
      options.max_steps = kLemmaStepLimit;
      options.probes_per_step = 64;
      options.seed = 1;
      const ConsistencyReport report =
          check_consistency(spec, spec.parse_input(input), options);
      cells += report.cells_checked;
      if (!report.passed) {
        detail = report.to_line();
        return false;
      }
    }
  }
  detail = std::to_string(cells) + " cells checked, zero mismatches";
  return true;
}

bool history_oracle_equivalence(std::string& detail) {
  constexpr std::uint32_t kAlphabet = 8;
  std::mt19937_64 rng(2024);
  HistoryStore store(kAlphabet, 0);
  test::NaiveHistory naive{0, {}};
  std::vector<Timestamp> last(256, 0);
  for (int i = 0; i < 10'000; ++i) {
    const Position p = static_cast<Position>(rng() % 256) - 128;
    auto& at = last[static_cast<std::size_t>(p + 128)];
    at += 1 + rng() % 4;
    const auto a = static_cast<SymbolId>(rng() % kAlphabet);
    store.append_write(p, a, at);
    naive.record(p, a, at);
  }
  std::uint64_t disagreements = 0;
  for (int i = 0; i < 100'000; ++i) {
    const Position p = static_cast<Position>(rng() % 300) - 150;
    const Timestamp t = rng() % 60'000;
    if (store.read_latest(p, t) != naive.read_latest(p, t)) ++disagreements;
  }
  detail = "100000 queries over 10000 writes, " + std::to_string(disagreements) +
           " disagreements";
  return disagreements == 0;
}

bool overhead_bound(std::string& detail) {
  const MachineSpec spec = test::load_machine("revisit");
  const OverheadReport report = run_instrumented(spec, {}, 1'000'000);
  if (report.steps != 1'000'000) {
    detail = "expected 1e6 steps, ran " + std::to_string(report.steps);
    return false;
  }
  for (const OverheadSample& s : report.samples) {
    if (s.comparisons > ceil_log2(s.probe_writes) + 1) {
      detail = "comparisons " + std::to_string(s.comparisons) + " over bound at t=" +
               std::to_string(s.t) + " (k=" + std::to_string(s.probe_writes) + ")";
      return false;
    }
  }
  const ScalingVerdict verdict = fit_scaling(report);
  if (!verdict.logarithmic_consistent) {
    detail = verdict.to_string();
    return false;
  }
  if (report.entries_over_bit_budget != 0) {
    detail = std::to_string(report.entries_over_bit_budget) + " entries over the bit budget";
    return false;
  }
  detail = "1e6 steps, " + std::to_string(report.samples.size()) +
           " samples within ceil(log2 k)+1; " + verdict.to_string();
  return true;
}

bool integrity_faults(std::string& detail) {
  // Candidate injection targets: entries at head-path positions, cycled
  // over the corpus. 100 seeded trials, each corrupting one entry.
  struct Target {
    std::string machine;
    std::string input;
    std::size_t entry_index;
  };
  std::vector<Target> candidates;
  for (const auto& entry : test::corpus()) {
    const MachineSpec spec = test::load_machine(entry.machine);
    for (const std::string& input : entry.inputs) {
      const auto symbols = spec.parse_input(input);
      DirectSim oracle(spec, symbols);
      while (!oracle.halted() && oracle.config().step < 2'000) oracle.step();

      KernelState kernel = kernel_init(spec, symbols);
      while (!spec.is_halting(kernel.config.state) && kernel.config.step < 2'000) {
        kernel_step(kernel, spec);
      }
      for (std::size_t i = 0; i < kernel.history.entry_count(); ++i) {
        const Position p = kernel.history.entry(i).position;
        if (p >= oracle.min_visited() && p <= oracle.max_visited()) {
          candidates.push_back({entry.machine, input, i});
        }
      }
    }
  }

  std::mt19937_64 rng(7);
  int surfaced = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Target& target = candidates[rng() % candidates.size()];
    const MachineSpec spec = test::load_machine(target.machine);
    ConsistencyOptions options;
    options.max_steps = 2'000;
    options.seed = static_cast<std::uint64_t>(trial);
    options.fault = FaultInjection{target.entry_index};
    try {
      if (!check_consistency(spec, spec.parse_input(target.input), options).passed) ++surfaced;
    } catch (const IntegrityViolation&) {
      ++surfaced;
    }
  }
  detail = std::to_string(surfaced) + "/100 injected faults surfaced";
  return surfaced == 100;
}

bool busy_beaver_golden(std::string& detail) {
  const MachineSpec spec = test::load_machine("bb3");
  const RunResult kernel = run_kernel(spec, {}, kLemmaStepLimit);
  if (!kernel.halted()) {
    detail = "kernel run did not halt";
    return false;
  }
  // Golden values pinned from the committed direct-oracle trace.
  const std::uint64_t halt_step = kernel.trace.back().config.step;

  DirectSim oracle(spec, {});
  while (!oracle.halted()) oracle.step();
  int ones = 0;
  KernelState state = kernel_init(spec, {});
  while (kernel_step(state, spec)) {
  }
  for (Position p = oracle.min_visited(); p <= oracle.max_visited(); ++p) {
    if (state.history.read_latest(p, state.config.step) == *spec.find_symbol("1")) ++ones;
  }

  std::ifstream golden(test::golden_path("bb3.trace"), std::ios::binary);
  if (!golden.good()) {
    detail = "missing golden trace";
    return false;
  }
  std::ostringstream want;
  want << golden.rdbuf();
  const bool trace_ok = render_trace(spec, kernel.trace) == want.str();

  detail = "halt step " + std::to_string(halt_step) + ", " + std::to_string(ones) +
           " ones, trace " + (trace_ok ? "matches golden" : "DIFFERS");
  return halt_step == 21 && ones == 6 && trace_ok;
}

bool threshold_module(std::string& detail) {
  for (const std::uint64_t k : {0ULL, 1ULL, 1'000ULL, 1'000'000ULL}) {
    Counter c;
    for (std::uint64_t i = 0; i < k; ++i) c.increment();
    if (c.total() != k) {
      detail = "counter diverged at k=" + std::to_string(k);
      return false;
    }
  }

  std::mt19937_64 rng(5);
  std::vector<std::int64_t> inputs;
  for (int i = 0; i < 10'000; ++i) inputs.push_back(static_cast<std::int64_t>(rng()) % 997);
  std::vector<int> in_order;
  for (std::int64_t x : inputs) in_order.push_back(threshold_unit(x));
  std::vector<std::size_t> order(inputs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> permuted(inputs.size());
  for (std::size_t i : order) permuted[i] = threshold_unit(inputs[i]);
  if (in_order != permuted) {
    detail = "threshold unit output depended on call history";
    return false;
  }
  detail = "counter exact at k in {0,1,1e3,1e6}; purity over 10000 interleavings";
  return true;
}

bool corollary_demo(std::string& detail) {
  const utm::TwoStateProgram program = utm::demo_increment_program();
  const std::string input = "111";

  // Interpreted on the history-backed substrate.
  const MachineSpec interp = test::load_machine("utm");
  const auto tape = interp.parse_input(utm::encode_tape(program, input));
  KernelState state = kernel_init(interp, tape);
  Position hi = static_cast<Position>(tape.size()) - 1;
  while (kernel_step(state, interp)) {
    if (state.config.head > hi) hi = state.config.head;
    if (state.config.step > 100'000) {
      detail = "interpreter did not halt";
      return false;
    }
  }
  const std::string interpreted =
      utm::decode_tape(interp.render_symbols(reconstruct_tape(state, 0, hi)));

  // The encoded program run directly.
  const MachineSpec prog = parse_machine(utm::machine_text(program, "prog"));
  DirectSim direct(prog, prog.parse_input(input));
  while (!direct.halted()) direct.step();
  std::string expected;
  for (std::size_t p = 0; p < interpreted.size(); ++p) {
    expected += prog.symbol_glyph(direct.cell(static_cast<Position>(p)));
  }

  detail = "interpreted='" + interpreted + "' direct='" + expected + "' after " +
           std::to_string(state.config.step) + " interpreter steps";
  return !interpreted.empty() && interpreted == expected;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "lemma1-coherence", 10.0, lemma1_coherence},
      {2, "lemma2-consistency", 30.0, lemma2_consistency},
      {3, "history-oracle-equivalence", 5.0, history_oracle_equivalence},
      {4, "log-overhead-bound", 60.0, overhead_bound},
      {5, "integrity-fault-injection", 10.0, integrity_faults},
      {6, "busy-beaver-golden", 10.0, busy_beaver_golden},
      {7, "threshold-counter", 5.0, threshold_module},
      {8, "corollary-utm-demo", 10.0, corollary_demo},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    bool ok = false;
    const auto started = std::chrono::steady_clock::now();
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (seconds > criterion.budget_seconds) {
      ok = false;
      detail += " [over budget]";
    }
    if (!ok) ++failures;
    std::printf("%s  %d %-28s %6.2fs (budget %.0fs)  %s\n", ok ? "PASS" : "FAIL",
                criterion.number, criterion.name.c_str(), seconds, criterion.budget_seconds,
                detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
