#pragma once

#include <vector>

#include "memsim/machine.hpp"

namespace memsim {

// Growable two-way tape backed by plain arrays. Reads outside the written
// region return blank without growing.
class DirectTape {
 public:
  explicit DirectTape(SymbolId blank) : blank_(blank) {}

  SymbolId get(Position p) const {
    if (p >= 0) {
      const auto i = static_cast<std::size_t>(p);
      return i < right_.size() ? right_[i] : blank_;
    }
    const auto i = static_cast<std::size_t>(-(p + 1));
    return i < left_.size() ? left_[i] : blank_;
  }

  void set(Position p, SymbolId a) {
    if (p >= 0) {
      const auto i = static_cast<std::size_t>(p);
      if (i >= right_.size()) right_.resize(i + 1, blank_);
      right_[i] = a;
    } else {
      const auto i = static_cast<std::size_t>(-(p + 1));
      if (i >= left_.size()) left_.resize(i + 1, blank_);
      left_[i] = a;
    }
  }

 private:
  SymbolId blank_;
  std::vector<SymbolId> right_;  // cells 0, 1, 2, ...
  std::vector<SymbolId> left_;   // cells -1, -2, -3, ...
};

// Conventional array-backed simulator, the ground truth the history-backed
// kernel is checked against. Input occupies cells 0..n-1, head starts at 0.
class DirectSim {
 public:
  DirectSim(const MachineSpec& spec, const std::vector<SymbolId>& input);

  const Configuration& config() const { return config_; }
  bool halted() const { return spec_->is_halting(config_.state); }
  TraceRecord record() const { return {config_, halted()}; }

  // Applies one transition. Throws UndefinedTransition when stuck; must not
  // be called after halting.
  void step();

  SymbolId cell(Position p) const { return tape_.get(p); }

  // Extremes of the head path so far.
  Position min_visited() const { return min_visited_; }
  Position max_visited() const { return max_visited_; }

 private:
  const MachineSpec* spec_;
  DirectTape tape_;
  Configuration config_;
  Position min_visited_ = 0;
  Position max_visited_ = 0;
};

RunResult run_direct(const MachineSpec& spec, const std::vector<SymbolId>& input,
                     std::uint64_t max_steps);

}  // namespace memsim
