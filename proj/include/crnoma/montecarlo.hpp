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
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "crnoma/config.hpp"

namespace crnoma {

/// Per-user outcome of one fading trial.
struct TrialResult {
  std::vector<double> sidnr_hop1;   // gamma at R (or baseline hop 1)
  std::vector<double> sidnr_hop2;   // gamma at the user
  std::vector<std::uint8_t> outage; // min(hop1, hop2) < psi_user
  bool csi_clamped = false;
};

TrialResult run_trial(const SystemConfig& config, double rho,
                      std::uint64_t seed, std::uint64_t trial_id);

struct EstimateOptions {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  int workers = 0;          // 0: take CRNOMA_WORKERS or hardware concurrency
  bool with_analytic = true;
  bool joint_sic = false;   // also estimate the strict all-layers semantics
};

/// Empirical outage estimate for one user at one SNR.
struct OutageResult {
  int user = 1;                       // 1-based
  double rho = 0.0;
  std::optional<double> analytic_op;  // closed form, when requested
  double empirical_op = 0.0;
  std::uint64_t trials = 0;
  double ci_halfwidth = 0.0;          // 3 * sqrt(p(1-p)/N)
  double hop1_cdf = 0.0;              // empirical Pr[gamma_hop1 < psi]
  double hop2_cdf = 0.0;
  bool joint_sic_mode = false;
  double joint_op = 0.0;              // strict semantics, when enabled
};

/// Deterministic for fixed (seed, trials) regardless of worker count:
/// trial t always consumes substream t and successes accumulate as integers.
std::vector<OutageResult> estimate_outage(const SystemConfig& config,
                                          double rho,
                                          const EstimateOptions& options);

/// Empirical CDF of one hop's SIDNR over a shared sample set, evaluated on an
/// ascending threshold grid. hop is 1 or 2; user is 1-based.
std::vector<double> empirical_cdf(const SystemConfig& config, int hop,
                                  int user, double rho,
                                  std::span<const double> psi_grid,
                                  std::uint64_t trials, std::uint64_t seed);

/// Debug dump of raw realizations and the resulting per-hop powers, one CSV
/// row per trial.
void dump_realizations_csv(const SystemConfig& config, double rho,
                           std::uint64_t trials, std::uint64_t seed,
                           std::ostream& out);

}  // namespace crnoma
