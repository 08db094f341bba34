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

#include "crnoma/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace crnoma {

namespace {

using nlohmann::json;

constexpr double kSumTolerance = 1e-9;

void check_pa_vector(const std::vector<double>& v, int b, const char* name,
                     std::vector<std::string>& out) {
  if (static_cast<int>(v.size()) != b) {
    out.push_back(std::string(name) + ": expected " + std::to_string(b) +
                  " entries, got " + std::to_string(v.size()));
    return;
  }
  double sum = 0.0;
  for (double x : v) sum += x;
  if (std::abs(sum - 1.0) > kSumTolerance)
    out.push_back(std::string(name) + ": entries must sum to 1 (got " +
                  std::to_string(sum) + ")");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0))
      out.push_back(std::string(name) + "[" + std::to_string(i) +
                    "]: must be > 0");
    if (i + 1 < v.size() && !(v[i] > v[i + 1]))
      out.push_back(std::string(name) +
                    ": factors must be strictly decreasing");
  }
}

void check_size(std::size_t got, int want, const char* name,
                std::vector<std::string>& out) {
  if (static_cast<int>(got) != want)
    out.push_back(std::string(name) + ": expected " + std::to_string(want) +
                  " entries, got " + std::to_string(got));
}

}  // namespace

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s;
}

ValidationReport validate(const SystemConfig& c) {
  ValidationReport report;
  auto& out = report.violations;
  const int b = c.num_users;

  if (b < 2) out.push_back("num_users: must be >= 2");
  check_pa_vector(c.alpha, b, "alpha", out);
  check_pa_vector(c.beta, b, "beta", out);

  check_size(c.sic_residue.size(), b - 1, "sic_residue", out);
  for (double e : c.sic_residue)
    if (!(e >= 0.0 && e <= 1.0))
      out.push_back("sic_residue: entries must lie in [0, 1]");

  if (!(c.hi_source >= 0.0)) out.push_back("hi_source: must be >= 0");
  if (!(c.hi_primary >= 0.0)) out.push_back("hi_primary: must be >= 0");
  check_size(c.hi_user.size(), b, "hi_user", out);
  for (double p : c.hi_user)
    if (!(p >= 0.0)) out.push_back("hi_user: entries must be >= 0");

  // theta == 0 is accepted as the perfect-CSI case.
  if (!(c.csi_theta >= 0.0)) out.push_back("csi_theta: must be >= 0");
  if (!(c.csi_kappa >= 0.0)) out.push_back("csi_kappa: must be >= 0");

  if (!(c.pbar_s >= 0.0)) out.push_back("pbar_s: must be >= 0");
  if (!(c.pbar_r >= 0.0)) out.push_back("pbar_r: must be >= 0");
  if (!(c.p_t >= 0.0)) out.push_back("p_t: must be >= 0");
  if (!(c.i_itc >= 0.0)) out.push_back("i_itc: must be >= 0 (or infinite)");

  if (!(c.noise_r >= 0.0)) out.push_back("noise_r: must be >= 0");
  check_size(c.noise_users.size(), b, "noise_users", out);
  for (double n : c.noise_users)
    if (!(n >= 0.0)) out.push_back("noise_users: entries must be >= 0");

  for (auto [d, name] : {std::pair{c.d_sr, "d_sr"}, {c.d_sd, "d_sd"},
                         {c.d_rd, "d_rd"}, {c.d_tr, "d_tr"}})
    if (!(d > 0.0)) out.push_back(std::string(name) + ": must be > 0");
  check_size(c.d_rb.size(), b, "d_rb", out);
  check_size(c.d_tb.size(), b, "d_tb", out);
  for (double d : c.d_rb)
    if (!(d > 0.0)) out.push_back("d_rb: entries must be > 0");
  for (double d : c.d_tb)
    if (!(d > 0.0)) out.push_back("d_tb: entries must be > 0");

  if (!(c.pathloss >= 2.0)) out.push_back("pathloss: must be >= 2");

  check_size(c.rate_thresholds.size(), b, "rate_thresholds", out);
  for (double r : c.rate_thresholds)
    if (!(r >= 0.0)) out.push_back("rate_thresholds: entries must be >= 0");

  return report;
}

void require_valid(const SystemConfig& config) {
  auto report = validate(config);
  if (!report.ok())
    throw std::invalid_argument("invalid config: " + report.summary());
}

double effective_error_variance(double theta, double kappa, double rho) {
  if (!(rho > 0.0))
    throw std::domain_error("effective_error_variance: rho must be > 0");
  if (theta == 0.0) return 0.0;
  return theta * std::pow(rho, -kappa);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double value) { return 10.0 * std::log10(value); }

double reference_snr(const SystemConfig& config) { return config.pbar_s; }

SystemConfig at_transmit_snr(SystemConfig config, double rho) {
  config.pbar_s = rho;
  config.pbar_r = rho;
  return config;
}

namespace {

std::vector<double> read_broadcast(const json& j, const char* key, int n) {
  const auto& v = j.at(key);
  if (v.is_number()) return std::vector<double>(n, v.get<double>());
  return v.get<std::vector<double>>();
}

// Linear value from either `key` or `key_db`, preferring the linear form.
bool read_power(const json& j, const std::string& key, double& out) {
  if (j.contains(key)) {
    const auto& v = j.at(key);
    if (v.is_string()) {
      if (v.get<std::string>() == "inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
      }
      throw std::invalid_argument("config: " + key + " must be a number or \"inf\"");
    }
    out = v.get<double>();
    return true;
  }
  if (j.contains(key + "_db")) {
    out = db_to_linear(j.at(key + "_db").get<double>());
    return true;
  }
  return false;
}

}  // namespace

SystemConfig config_from_json(const std::string& text) {
  json j = json::parse(text);
  SystemConfig c;
  c.num_users = j.value("num_users", 2);
  const int b = c.num_users;

  if (j.contains("alpha")) c.alpha = j.at("alpha").get<std::vector<double>>();
  if (j.contains("beta")) c.beta = j.at("beta").get<std::vector<double>>();
  if (j.contains("sic_residue"))
    c.sic_residue = read_broadcast(j, "sic_residue", b - 1);
  else
    c.sic_residue.assign(b - 1, 0.0);

  c.hi_source = j.value("hi_source", 0.0);
  c.hi_user = j.contains("hi_user") ? read_broadcast(j, "hi_user", b)
                                    : std::vector<double>(b, 0.0);
  c.hi_primary = j.value("hi_primary", 0.0);
  c.csi_theta = j.value("csi_theta", 0.0);
  c.csi_kappa = j.value("csi_kappa", 0.0);

  if (j.contains("transmit_snr_db")) {
    const double rho = db_to_linear(j.at("transmit_snr_db").get<double>());
    c.pbar_s = rho;
    c.pbar_r = rho;
  }
  read_power(j, "pbar_s", c.pbar_s);
  read_power(j, "pbar_r", c.pbar_r);
  read_power(j, "p_t", c.p_t);
  if (!read_power(j, "i_itc", c.i_itc))
    c.i_itc = std::numeric_limits<double>::infinity();

  c.noise_r = j.value("noise_r", 1.0);
  c.noise_users = j.contains("noise_users") ? read_broadcast(j, "noise_users", b)
                                            : std::vector<double>(b, 1.0);

  c.d_sr = j.value("d_sr", 1.0);
  c.d_sd = j.value("d_sd", 3.0);
  c.d_rd = j.value("d_rd", 3.0);
  c.d_tr = j.value("d_tr", 3.0);
  c.d_rb = j.contains("d_rb") ? read_broadcast(j, "d_rb", b)
                              : std::vector<double>(b, 1.0);
  c.d_tb = j.contains("d_tb") ? read_broadcast(j, "d_tb", b)
                              : std::vector<double>(b, 3.0);
  c.pathloss = j.value("pathloss", 3.0);

  if (j.contains("rate_thresholds"))
    c.rate_thresholds = read_broadcast(j, "rate_thresholds", b);

  if (j.contains("mode")) {
    const std::string m = j.at("mode").get<std::string>();
    if (m == "noma")
      c.mode = AccessMode::kNoma;
    else if (m == "oma")
      c.mode = AccessMode::kOma;
    else
      throw std::invalid_argument("config: mode must be \"noma\" or \"oma\"");
  }
  return c;
}

std::string to_json(const SystemConfig& c) {
  json j;
  j["num_users"] = c.num_users;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["sic_residue"] = c.sic_residue;
  j["hi_source"] = c.hi_source;
  j["hi_user"] = c.hi_user;
  j["hi_primary"] = c.hi_primary;
  j["csi_theta"] = c.csi_theta;
  j["csi_kappa"] = c.csi_kappa;
  j["pbar_s"] = c.pbar_s;
  j["pbar_r"] = c.pbar_r;
  j["p_t"] = c.p_t;
  if (std::isinf(c.i_itc))
    j["i_itc"] = "inf";
  else
    j["i_itc"] = c.i_itc;
  j["noise_r"] = c.noise_r;
  j["noise_users"] = c.noise_users;
  j["d_sr"] = c.d_sr;
  j["d_sd"] = c.d_sd;
  j["d_rd"] = c.d_rd;
  j["d_tr"] = c.d_tr;
  j["d_rb"] = c.d_rb;
  j["d_tb"] = c.d_tb;
  j["pathloss"] = c.pathloss;
  j["rate_thresholds"] = c.rate_thresholds;
  j["mode"] = c.mode == AccessMode::kNoma ? "noma" : "oma";
  return j.dump(2);
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void save_config(const SystemConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << to_json(config) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

SystemConfig make_base() {
  SystemConfig c;
  c.num_users = 2;
  c.alpha = {0.8, 0.2};
  c.beta = {0.8, 0.2};
  c.sic_residue = {0.0};
  c.hi_user = {0.0, 0.0};
  c.noise_users = {1.0, 1.0};
  c.d_rb = {1.0, 1.0};
  c.d_tb = {3.0, 3.0};
  c.rate_thresholds = {1.0, 1.5};
  c.p_t = 10.0;  // 10 dB
  c.i_itc = std::numeric_limits<double>::infinity();
  return c;
}

std::vector<ScenarioPreset> make_presets() {
  std::vector<ScenarioPreset> presets;

  presets.push_back({"base", make_base(),
                     "Two-user reference scenario: PA 0.8/0.2 on both hops, "
                     "rates 1 and 1.5, relay midway (d=1) with all other "
                     "links at 3d, tau=3, primary power 10 dB, no "
                     "interference cap, ideal hardware/CSI/SIC."});

  SystemConfig oma = make_base();
  oma.mode = AccessMode::kOma;
  presets.push_back({"base_oma", oma,
                     "Reference scenario evaluated as the orthogonal "
                     "baseline (one user per slot pair, doubled per-user "
                     "spectral-efficiency demand)."});

  SystemConfig itc = make_base();
  itc.i_itc = 100.0;  // 20 dB
  presets.push_back({"itc20", itc,
                     "Reference scenario with a 20 dB interference cap at "
                     "the primary receiver."});

  SystemConfig quiet = make_base();
  quiet.p_t = 0.0;
  presets.push_back({"no_primary", quiet,
                     "Reference scenario with the primary transmitter "
                     "silent."});

  return presets;
}

}  // namespace

const std::vector<ScenarioPreset>& scenario_presets() {
  static const std::vector<ScenarioPreset> presets = make_presets();
  return presets;
}

std::optional<SystemConfig> preset_config(const std::string& name) {
  for (const auto& p : scenario_presets())
    if (p.name == name) return p.config;
  return std::nullopt;
}

int workers_from_env() {
  const char* env = std::getenv("CRNOMA_WORKERS");
  if (!env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 0) return 0;
  return static_cast<int>(v);
}

}  // namespace crnoma
