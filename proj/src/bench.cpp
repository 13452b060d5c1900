#include "memsim/bench.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "memsim/bits.hpp"
#include "memsim/kernel_sim.hpp"

namespace memsim {

namespace {

// Slope threshold for "comparisons per step": a truly linear read cost has
// slope ~1, a logarithmic one decays toward zero as runs grow.
constexpr double kLinearSlopeThreshold = 1e-3;

struct Fit {
  double slope = 0;
  double residual = 0;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  Fit fit;
  fit.slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + intercept);
    fit.residual += r * r;
  }
  return fit;
}

}  // namespace

OverheadReport run_instrumented(const MachineSpec& spec, const std::vector<SymbolId>& input,
                                std::uint64_t max_steps) {
  OverheadReport report;
  report.machine = spec.name();
  report.input = spec.render_symbols(input);
  report.symbol_bits = spec.symbol_bits();

  KernelState state = kernel_init(spec, input);
  std::uint64_t max_abs_position = static_cast<std::uint64_t>(
      input.empty() ? 0 : static_cast<Position>(input.size()) - 1);
  std::uint64_t next_sample = 1;

  while (!spec.is_halting(state.config.state) && state.config.step < max_steps) {
    const std::uint64_t before = state.history.comparison_count();
    const auto started = std::chrono::steady_clock::now();
    if (!kernel_step(state, spec)) break;
    const auto finished = std::chrono::steady_clock::now();

    const std::uint64_t t = state.config.step;
    const std::uint64_t abs_head = static_cast<std::uint64_t>(
        state.config.head < 0 ? -state.config.head : state.config.head);
    if (abs_head > max_abs_position) max_abs_position = abs_head;

    if (t == next_sample || t == max_steps ||
        spec.is_halting(state.config.state)) {
      OverheadSample sample;
      sample.t = t;
      sample.comparisons = state.history.comparison_count() - before;
      sample.entries = state.history.entry_count();
      sample.step_bits = ceil_log2(t + 1);
      sample.position_bits = ceil_log2(max_abs_position + 2);
      sample.wall_time_ns = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(finished - started).count());
      sample.probe_position = state.config.head;
      sample.probe_writes = state.history.writes_at(state.config.head);
      report.samples.push_back(sample);
      while (next_sample <= t) next_sample *= 2;
    }
  }

  report.steps = state.config.step;
  report.total_comparisons = state.history.comparison_count();
  for (std::size_t i = 0; i < state.history.entry_count(); ++i) {
    const HistoryEntry& e = state.history.entry(i);
    const std::uint64_t bits = e.storable_bits(report.symbol_bits);
    if (bits > report.max_entry_storable_bits) report.max_entry_storable_bits = bits;
    const std::uint64_t abs_p =
        static_cast<std::uint64_t>(e.position < 0 ? -e.position : e.position);
    const std::uint64_t budget = kEntryBitBudgetConstant + report.symbol_bits +
                                 ceil_log2(e.timestamp + 1) + ceil_log2(abs_p + 2);
    if (bits > budget) ++report.entries_over_bit_budget;
  }
  return report;
}

void write_csv(std::ostream& out, const OverheadReport& report) {
  out << "t,comparisons,entries,step_bits,position_bits,wall_time_ns\n";
  for (const OverheadSample& s : report.samples) {
    out << s.t << ',' << s.comparisons << ',' << s.entries << ',' << s.step_bits << ','
        << s.position_bits << ',' << s.wall_time_ns << '\n';
  }
}

std::string ScalingVerdict::to_string() const {
  std::string text = logarithmic_consistent ? "logarithmic-consistent" : "not-logarithmic";
  text += " log_slope=" + std::to_string(log_slope);
  text += " log_residual=" + std::to_string(log_residual);
  text += " linear_slope=" + std::to_string(linear_slope);
  text += " linear_residual=" + std::to_string(linear_residual);
  return text;
}

ScalingVerdict fit_scaling(const OverheadReport& report) {
  const auto& samples = report.samples;
  if (samples.size() < 16) {
    throw InsufficientSamples("need >= 16 samples, have " + std::to_string(samples.size()));
  }
  const double octaves = std::log2(static_cast<double>(samples.back().t) /
                                   static_cast<double>(samples.front().t));
  if (octaves < 3.0) {
    throw InsufficientSamples("samples span " + std::to_string(octaves) + " octaves, need >= 3");
  }

  std::vector<double> log_t, lin_t, y;
  for (const OverheadSample& s : samples) {
    log_t.push_back(std::log2(static_cast<double>(s.t)));
    lin_t.push_back(static_cast<double>(s.t));
    y.push_back(static_cast<double>(s.comparisons));
  }
  const Fit log_fit = least_squares(log_t, y);
  const Fit lin_fit = least_squares(lin_t, y);

  ScalingVerdict verdict;
  verdict.log_slope = log_fit.slope;
  verdict.log_residual = log_fit.residual;
  verdict.linear_slope = lin_fit.slope;
  verdict.linear_residual = lin_fit.residual;
  // <= so that a flat series (already constant-cost) passes on the slope
  // test alone.
  verdict.logarithmic_consistent =
      lin_fit.slope < kLinearSlopeThreshold && log_fit.residual <= lin_fit.residual + 1e-9;
  return verdict;
}

}  // namespace memsim
