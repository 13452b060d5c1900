#include "memsim/kernel_sim.hpp"

namespace memsim {

KernelState kernel_init(const MachineSpec& spec, const std::vector<SymbolId>& input) {
  for (SymbolId a : input) {
    if (a >= spec.num_symbols()) {
      throw UnknownSymbol("input symbol id " + std::to_string(a) +
                          " outside alphabet of machine " + spec.name());
    }
  }
  KernelState state(static_cast<std::uint32_t>(spec.num_symbols()), spec.blank());
  state.history.seed_input(input, 0);
  state.config = {spec.start(), 0, state.history.read_latest(0, 0), 0};
  return state;
}

bool kernel_step(KernelState& state, const MachineSpec& spec) {
  const Configuration& c = state.config;
  const StepOutcome out = delta(spec, c.state, c.under_head);
  if (out.kind == StepKind::Halt) {
    return false;
  }
  if (out.kind == StepKind::Undefined) {
    throw UndefinedTransition(c, "machine " + spec.name() + " stuck in state " +
                                     spec.state_name(c.state) + " on '" +
                                     spec.symbol_glyph(c.under_head) + "' at step " +
                                     std::to_string(c.step));
  }
  const Timestamp next = c.step + 1;
  state.history.append_write(c.head, out.rule.write, next);
  const Position head = c.head + static_cast<Position>(out.rule.move);
  state.config = {out.rule.next_state, head, state.history.read_latest(head, next), next};
  return true;
}

RunResult run_kernel(const MachineSpec& spec, const std::vector<SymbolId>& input,
                     std::uint64_t max_steps) {
  KernelState state = kernel_init(spec, input);
  RunResult result;
  result.trace.push_back({state.config, spec.is_halting(state.config.state)});
  while (!result.trace.back().halted) {
    if (state.config.step >= max_steps) {
      result.reason = StopReason::StepLimit;
      return result;
    }
    kernel_step(state, spec);
    result.trace.push_back({state.config, spec.is_halting(state.config.state)});
  }
  result.reason = StopReason::Halted;
  return result;
}

std::vector<SymbolId> reconstruct_tape(const KernelState& state, Position lo, Position hi) {
  std::vector<SymbolId> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Position p = lo; p <= hi; ++p) {
    out.push_back(state.history.read_latest(p, state.config.step));
  }
  return out;
}

std::string tape_snapshot_line(const MachineSpec& spec, const KernelState& state, Position lo,
                               Position hi) {
  std::string out = "tape\t" + std::to_string(lo) + '\t' + std::to_string(hi) + '\t';
  out += spec.render_symbols(reconstruct_tape(state, lo, hi));
  return out;
}

}  // namespace memsim
