/*
   Copyright 2026 crnoma developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crnoma/config.hpp"

namespace crnoma {

enum class EvalMode { kAnalytic, kMonteCarlo, kBoth };

inline constexpr const char* kAxisNames[] = {
    "transmit_snr_db", "p_t_db", "i_itc_db", "phi", "epsilon", "theta", "kappa"};

bool is_valid_axis(const std::string& axis);

/// One evaluation axis over a base scenario. `series` tags the rows this spec
/// produces so multi-variant tables stay distinguishable in the CSV.
struct SweepSpec {
  SystemConfig base;
  std::string axis = "transmit_snr_db";
  std::vector<double> values;
  EvalMode mode = EvalMode::kBoth;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  std::string series;  // optional label, appended to the user column
};

ValidationReport validate_sweep(const SweepSpec& spec);

struct ResultRow {
  double axis = 0.0;
  std::string user;   // "U1".."UB", optionally "U1:<series>"
  std::string mode;   // "analytic" or "mc"
  double op = 0.0;
  double ci = 0.0;    // 0 for analytic rows
  std::string flags;  // "-" or ";"-joined markers (boundary, csi_clamped)
};

struct ResultTable {
  std::string axis_name;
  std::vector<ResultRow> rows;
  bool operator==(const ResultTable&) const = default;
};

/// Applies one axis value to a scenario; returns the modified config and the
/// SNR at which it must be evaluated.
std::pair<SystemConfig, double> apply_axis(const SystemConfig& base,
                                           const std::string& axis,
                                           double value);

/// Evaluates every (value x user x mode) cell. Points are dispatched to a
/// bounded worker pool; rows come back in spec order regardless of completion
/// order, and reruns with equal spec+seed are byte-identical.
ResultTable run_sweep(const SweepSpec& spec, int workers = 0);

/// Concatenation of several sweeps (variant series of one figure).
ResultTable run_sweeps(const std::vector<SweepSpec>& specs, int workers = 0);

std::string csv_string(const ResultTable& table);
void emit_csv(const ResultTable& table, const std::string& path);
ResultTable parse_csv(const std::string& text);

/// Self-contained gnuplot script (inline data blocks, log-scale y, one series
/// per user/mode pair).
std::string plot_script_string(const ResultTable& table);
void emit_plot_script(const ResultTable& table, const std::string& path);

/// Bundled sweep presets: "fig2" (SNR sweep of the ideal system under the
/// cap/no-cap and primary-power variants, NOMA and baseline), "fig3" (SIC and
/// HI imperfection variants), "fig4" (channel-error variants).
std::vector<std::string> sweep_preset_names();
std::vector<SweepSpec> sweep_preset(const std::string& name, EvalMode mode,
                                    std::uint64_t trials, std::uint64_t seed);

}  // namespace crnoma
