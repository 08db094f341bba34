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

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace crnoma {

enum class AccessMode { kNoma, kOma };

/// Complete parameterization of the two-hop underlay network: a secondary
/// source S relaying through R to B power-multiplexed users, sharing the band
/// with a primary pair T->D. All powers/noise variances are linear and
/// noise-normalized; distances are multiples of the reference distance.
struct SystemConfig {
  int num_users = 2;

  std::vector<double> alpha;        // source PA factors, strictly decreasing, sum 1
  std::vector<double> beta;         // relay PA factors, same constraints
  std::vector<double> sic_residue;  // residual fraction per cancelled layer, size B-1

  double hi_source = 0.0;           // aggregate HI level on the S->R radio
  std::vector<double> hi_user;      // aggregate HI level per user radio, size B
  double hi_primary = 0.0;          // aggregate HI level on the primary transmitter

  double csi_theta = 0.0;           // channel-error model: zeta = theta * rho^(-kappa)
  double csi_kappa = 0.0;

  double pbar_s = 100.0;            // max transmit power at S
  double pbar_r = 100.0;            // max transmit power at R
  double p_t = 10.0;                // primary transmit power
  double i_itc = std::numeric_limits<double>::infinity();  // interference cap at D

  double noise_r = 1.0;             // noise variance at R
  std::vector<double> noise_users;  // noise variance per user, size B

  double d_sr = 1.0, d_sd = 3.0, d_rd = 3.0, d_tr = 3.0;
  std::vector<double> d_rb;         // R->user distances, size B
  std::vector<double> d_tb;         // T->user distances, size B

  double pathloss = 3.0;            // path-loss exponent tau

  std::vector<double> rate_thresholds;  // target rate per user, size B

  AccessMode mode = AccessMode::kNoma;

  bool operator==(const SystemConfig&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const SystemConfig& config);

/// Throws std::invalid_argument carrying the validation summary.
void require_valid(const SystemConfig& config);

/// MMSE estimation-error variance zeta = theta * rho^(-kappa). rho must be > 0.
double effective_error_variance(double theta, double kappa, double rho);

double db_to_linear(double db);
double linear_to_db(double value);

/// Transmit SNR implied by a config under the sigma^2 = 1 normalization.
double reference_snr(const SystemConfig& config);

/// Copy of `config` with both hop power budgets set to rho (the swept SNR).
SystemConfig at_transmit_snr(SystemConfig config, double rho);

// --- JSON config file format -------------------------------------------------
// Keys match the field names above. Power fields additionally accept a *_db
// variant (pbar_s_db, pbar_r_db, p_t_db, i_itc_db, transmit_snr_db); i_itc
// accepts "inf". Per-user vectors accept a scalar that is broadcast.
std::string to_json(const SystemConfig& config);
SystemConfig config_from_json(const std::string& text);
SystemConfig load_config(const std::string& path);
void save_config(const SystemConfig& config, const std::string& path);

struct ScenarioPreset {
  std::string name;
  SystemConfig config;
  std::string description;
};

const std::vector<ScenarioPreset>& scenario_presets();
std::optional<SystemConfig> preset_config(const std::string& name);

/// Worker-count override from CRNOMA_WORKERS; 0 means "pick automatically".
int workers_from_env();

}  // namespace crnoma
