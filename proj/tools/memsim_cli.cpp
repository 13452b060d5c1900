#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memsim/bench.hpp"
#include "memsim/direct_sim.hpp"
#include "memsim/kernel_sim.hpp"
#include "memsim/machine.hpp"
#include "memsim/threshold.hpp"
#include "memsim/utm_codec.hpp"
#include "memsim/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitStepLimit = 2;
constexpr int kExitInsufficientSamples = 3;

struct RunOptions {
  std::string machine_path;
  std::string input;
  std::uint64_t max_steps = 1'000'000;
  std::string substrate = "kernel";
  std::string trace_out;
  bool print_tape = false;
};

struct VerifyOptions {
  std::string machine_path;
  std::string input;
  std::uint64_t max_steps = 10'000;
  std::uint32_t probes = 64;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> inject_fault;
};

struct BenchOptions {
  std::string machine_path;
  std::string input;
  std::uint64_t max_steps = 1'000'000;
  std::string csv_out;
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw memsim::Error("cannot open output file: " + path);
  out << contents;
}

// Cell range worth showing: seeded input plus everywhere the head went.
std::pair<memsim::Position, memsim::Position> trace_extent(
    const std::vector<memsim::TraceRecord>& trace, std::size_t input_size) {
  memsim::Position lo = 0;
  memsim::Position hi = input_size == 0 ? 0 : static_cast<memsim::Position>(input_size) - 1;
  for (const auto& rec : trace) {
    lo = std::min(lo, rec.config.head);
    hi = std::max(hi, rec.config.head);
  }
  return {lo, hi};
}

int cmd_run(const RunOptions& opt) {
  const memsim::MachineSpec spec = memsim::parse_machine_file(opt.machine_path);
  const std::vector<memsim::SymbolId> input = spec.parse_input(opt.input);

  memsim::RunResult result;
  std::string tape_line;
  if (opt.substrate == "kernel") {
    memsim::KernelState state = memsim::kernel_init(spec, input);
    result.trace.push_back({state.config, spec.is_halting(state.config.state)});
    while (!result.trace.back().halted && state.config.step < opt.max_steps) {
      memsim::kernel_step(state, spec);
      result.trace.push_back({state.config, spec.is_halting(state.config.state)});
    }
    result.reason = result.trace.back().halted ? memsim::StopReason::Halted
                                               : memsim::StopReason::StepLimit;
    if (opt.print_tape) {
      const auto [lo, hi] = trace_extent(result.trace, input.size());
      tape_line = memsim::tape_snapshot_line(spec, state, lo, hi);
    }
  } else {
    memsim::DirectSim sim(spec, input);
    result.trace.push_back(sim.record());
    while (!result.trace.back().halted && sim.config().step < opt.max_steps) {
      sim.step();
      result.trace.push_back(sim.record());
    }
    result.reason = result.trace.back().halted ? memsim::StopReason::Halted
                                               : memsim::StopReason::StepLimit;
    if (opt.print_tape) {
      const auto [lo, hi] = trace_extent(result.trace, input.size());
      std::string symbols;
      for (memsim::Position p = lo; p <= hi; ++p) symbols += spec.symbol_glyph(sim.cell(p));
      tape_line = "tape\t" + std::to_string(lo) + '\t' + std::to_string(hi) + '\t' + symbols;
    }
  }

  const memsim::TraceRecord& last = result.trace.back();
  std::cout << (last.halted ? "halted" : "step limit reached") << " at step "
            << last.config.step << ": state " << spec.state_name(last.config.state) << " head "
            << last.config.head << " under '" << spec.symbol_glyph(last.config.under_head)
            << "'\n";
  if (opt.print_tape) std::cout << tape_line << '\n';
  if (!opt.trace_out.empty()) write_file(opt.trace_out, memsim::render_trace(spec, result.trace));
  return last.halted ? kExitOk : kExitStepLimit;
}

int cmd_verify(const VerifyOptions& opt) {
  const memsim::MachineSpec spec = memsim::parse_machine_file(opt.machine_path);
  const std::vector<memsim::SymbolId> input = spec.parse_input(opt.input);

  std::optional<memsim::FaultInjection> fault;
  if (opt.inject_fault) {
    fault = memsim::FaultInjection{static_cast<std::size_t>(*opt.inject_fault)};
  }

  const memsim::CoherenceReport coherence =
      memsim::check_coherence(spec, input, opt.max_steps, fault);
  std::cout << coherence.to_line() << '\n';

  memsim::ConsistencyOptions consistency_options;
  consistency_options.max_steps = opt.max_steps;
  consistency_options.probes_per_step = opt.probes;
  consistency_options.seed = opt.seed;
  consistency_options.fault = fault;
  const memsim::ConsistencyReport consistency =
      memsim::check_consistency(spec, input, consistency_options);
  std::cout << consistency.to_line() << '\n';

  return coherence.passed && consistency.passed ? kExitOk : kExitError;
}

int cmd_bench(const BenchOptions& opt) {
  const memsim::MachineSpec spec = memsim::parse_machine_file(opt.machine_path);
  const std::vector<memsim::SymbolId> input = spec.parse_input(opt.input);

  const memsim::OverheadReport report = memsim::run_instrumented(spec, input, opt.max_steps);
  if (!opt.csv_out.empty()) {
    std::ofstream out(opt.csv_out, std::ios::binary);
    if (!out) throw memsim::Error("cannot open output file: " + opt.csv_out);
    memsim::write_csv(out, report);
  }
  try {
    const memsim::ScalingVerdict verdict = memsim::fit_scaling(report);
    std::cout << verdict.to_string() << '\n';
    return verdict.logarithmic_consistent ? kExitOk : kExitError;
  } catch (const memsim::InsufficientSamples& e) {
    std::cerr << "insufficient samples: " << e.what() << '\n';
    return kExitInsufficientSamples;
  }
}

int cmd_demo_counter(std::uint64_t ticks) {
  std::cout << "threshold_unit(-3)=" << memsim::threshold_unit(-3)
            << " threshold_unit(0)=" << memsim::threshold_unit(0)
            << " threshold_unit(5)=" << memsim::threshold_unit(5) << '\n';

  memsim::Counter counter;
  for (std::uint64_t i = 0; i < ticks; ++i) counter.increment();
  std::cout << "counter after " << ticks << " increments: " << counter.total() << '\n';

  memsim::Sequencer sequencer({"fetch", "decode", "execute", "write-back"});
  std::cout << "sequencer:";
  while (sequencer.remaining() > 0) std::cout << ' ' << sequencer.tick();
  std::cout << '\n';

  // The same counter idea driving a real machine step loop.
  const auto program = memsim::utm::demo_increment_program();
  const memsim::MachineSpec spec =
      memsim::parse_machine(memsim::utm::machine_text(program, "increment"));
  const memsim::RunResult run = memsim::run_kernel_sequenced(spec, spec.parse_input("111"), 64);
  std::cout << "sequenced machine run: " << run.trace.size() - 1 << " steps, "
            << (run.halted() ? "halted" : "step limit") << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machine simulation on a write-history substrate"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "run a machine and print the final configuration");
  run->add_option("--machine", run_opt.machine_path, "machine file")->required();
  run->add_option("--input", run_opt.input, "input tape string");
  run->add_option("--max-steps", run_opt.max_steps, "step limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--substrate", run_opt.substrate, "direct or kernel")
      ->check(CLI::IsMember({"direct", "kernel"}))
      ->capture_default_str();
  run->add_option("--trace-out", run_opt.trace_out, "write the trace to this file");
  run->add_flag("--tape", run_opt.print_tape, "also print a tape snapshot line");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "lockstep-check the kernel against the oracle");
  verify->add_option("--machine", verify_opt.machine_path, "machine file")->required();
  verify->add_option("--input", verify_opt.input, "input tape string");
  verify->add_option("--max-steps", verify_opt.max_steps, "step limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--probes", verify_opt.probes, "consistency probes per step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", verify_opt.seed, "probe sampling seed")->capture_default_str();
  verify->add_option("--inject-fault", verify_opt.inject_fault,
                     "corrupt history entry N once it exists");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "measure history access overhead");
  bench->add_option("--machine", bench_opt.machine_path, "machine file")->required();
  bench->add_option("--input", bench_opt.input, "input tape string");
  bench->add_option("--max-steps", bench_opt.max_steps, "step limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--csv-out", bench_opt.csv_out, "write per-sample CSV to this file");

  std::uint64_t demo_ticks = 10;
  CLI::App* demo = app.add_subcommand("demo-counter", "threshold unit and counter demo");
  demo->add_option("--ticks", demo_ticks, "counter increments to demonstrate")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (verify->parsed()) return cmd_verify(verify_opt);
    if (bench->parsed()) return cmd_bench(bench_opt);
    if (demo->parsed()) return cmd_demo_counter(demo_ticks);
  } catch (const memsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
