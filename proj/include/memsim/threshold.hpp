#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "memsim/errors.hpp"
#include "memsim/kernel_sim.hpp"
#include "memsim/machine.hpp"

namespace memsim {

// A memoryless threshold unit: 1 iff the input is strictly positive. On its
// own it computes nothing but this; every capability below comes from the
// state kept around it.
inline int threshold_unit(std::int64_t x) noexcept { return x > 0 ? 1 : 0; }

// The threshold unit plus one remembered number. The unit supplies the
// increment signal; the stored total supplies everything else. Unbounded on
// purpose: a width limit would be an invented restriction.
class Counter {
 public:
  using Total = boost::multiprecision::cpp_int;

  void increment() { total_ += threshold_unit(1); }
  const Total& total() const { return total_; }
  void reset() { total_ = 0; }

 private:
  Total total_ = 0;
};

class ProgramExhausted : public Error {
 public:
  using Error::Error;
};

// A counter driving a fixed program: tick k emits action k. Counting is
// already enough to sequence.
class Sequencer {
 public:
  explicit Sequencer(std::vector<std::string> program) : program_(std::move(program)) {}

  std::string tick() {
    if (counter_.total() >= program_.size()) {
      throw ProgramExhausted("sequencer ticked past " + std::to_string(program_.size()) +
                             " actions");
    }
    std::string action = program_[static_cast<std::size_t>(counter_.total())];
    counter_.increment();
    return action;
  }

  const Counter& counter() const { return counter_; }
  std::size_t remaining() const {
    return program_.size() - static_cast<std::size_t>(counter_.total());
  }

 private:
  Counter counter_;
  std::vector<std::string> program_;
};

// The chain counter -> sequencer -> machine simulation, made literal: a
// sequencer of "step" actions drives the history-backed simulator. The
// emitted action count equals the executed step count.
inline RunResult run_kernel_sequenced(const MachineSpec& spec,
                                      const std::vector<SymbolId>& input,
                                      std::uint64_t max_steps) {
  Sequencer sequencer(std::vector<std::string>(max_steps, "step"));
  KernelState state = kernel_init(spec, input);
  RunResult result;
  result.trace.push_back({state.config, spec.is_halting(state.config.state)});
  while (!result.trace.back().halted) {
    if (sequencer.remaining() == 0) {
      result.reason = StopReason::StepLimit;
      return result;
    }
    sequencer.tick();
    kernel_step(state, spec);
    result.trace.push_back({state.config, spec.is_halting(state.config.state)});
  }
  result.reason = StopReason::Halted;
  return result;
}

}  // namespace memsim
