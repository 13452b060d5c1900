#include "memsim/direct_sim.hpp"

namespace memsim {

DirectSim::DirectSim(const MachineSpec& spec, const std::vector<SymbolId>& input)
    : spec_(&spec), tape_(spec.blank()) {
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] >= spec.num_symbols()) {
      throw UnknownSymbol("input symbol id " + std::to_string(input[i]) +
                          " outside alphabet of machine " + spec.name());
    }
    tape_.set(static_cast<Position>(i), input[i]);
  }
  config_ = {spec.start(), 0, tape_.get(0), 0};
}

void DirectSim::step() {
  const StepOutcome out = delta(*spec_, config_.state, config_.under_head);
  if (out.kind == StepKind::Halt) {
    throw Error("step on a halted direct simulator");
  }
  if (out.kind == StepKind::Undefined) {
    throw UndefinedTransition(config_, "machine " + spec_->name() + " stuck in state " +
                                           spec_->state_name(config_.state) + " on '" +
                                           spec_->symbol_glyph(config_.under_head) + "' at step " +
                                           std::to_string(config_.step));
  }
  tape_.set(config_.head, out.rule.write);
  config_.head += static_cast<Position>(out.rule.move);
  config_.state = out.rule.next_state;
  config_.under_head = tape_.get(config_.head);
  ++config_.step;
  if (config_.head < min_visited_) min_visited_ = config_.head;
  if (config_.head > max_visited_) max_visited_ = config_.head;
}

RunResult run_direct(const MachineSpec& spec, const std::vector<SymbolId>& input,
                     std::uint64_t max_steps) {
  DirectSim sim(spec, input);
  RunResult result;
  result.trace.push_back(sim.record());
  while (!sim.halted()) {
    if (sim.config().step >= max_steps) {
      result.reason = StopReason::StepLimit;
      return result;
    }
    sim.step();
    result.trace.push_back(sim.record());
  }
  result.reason = StopReason::Halted;
  return result;
}

}  // namespace memsim
