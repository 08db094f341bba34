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

// Command-line front end. Deliberately written against the public C API only
// (crnoma.h), exactly like an external consumer of the shared library.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crnoma.h"

namespace {

struct ConfigDeleter {
  void operator()(crnoma_config* c) const { crnoma_config_free(c); }
};
struct TableDeleter {
  void operator()(crnoma_table* t) const { crnoma_table_free(t); }
};
using ConfigPtr = std::unique_ptr<crnoma_config, ConfigDeleter>;
using TablePtr = std::unique_ptr<crnoma_table, TableDeleter>;

[[noreturn]] void fail(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(1);
}

ConfigPtr load_scenario(const std::string& config_path,
                        const std::string& preset,
                        const std::vector<std::string>& overrides) {
  ConfigPtr cfg;
  if (!config_path.empty() && !preset.empty())
    fail("--config and --preset are mutually exclusive");
  if (!config_path.empty())
    cfg.reset(crnoma_config_from_file(config_path.c_str()));
  else
    cfg.reset(crnoma_config_preset(preset.empty() ? "base" : preset.c_str()));
  if (!cfg) fail(crnoma_last_error());
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) fail("--set expects key=value: " + kv);
    if (crnoma_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                          kv.substr(eq + 1).c_str()) != CRNOMA_OK)
      fail(crnoma_last_error());
  }
  char* report = nullptr;
  const crnoma_status s = crnoma_config_validate(cfg.get(), &report);
  if (s != CRNOMA_OK) {
    std::string msg = report ? report : crnoma_last_error();
    crnoma_free_string(report);
    fail("invalid scenario: " + msg);
  }
  crnoma_free_string(report);
  return cfg;
}

// "0,5,10" or "start:stop:step" (inclusive endpoints).
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  const auto parse_one = [](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
  };
  try {
    if (text.find(':') != std::string::npos) {
      const auto first = text.find(':');
      const auto second = text.find(':', first + 1);
      if (second == std::string::npos)
        throw std::invalid_argument("range needs start:stop:step");
      const double start = parse_one(text.substr(0, first));
      const double stop = parse_one(text.substr(first + 1, second - first - 1));
      const double step = parse_one(text.substr(second + 1));
      if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
      for (double v = start; v <= stop + 1e-12; v += step) values.push_back(v);
      return values;
    }
    std::size_t begin = 0;
    while (begin <= text.size()) {
      const auto comma = text.find(',', begin);
      const auto end = comma == std::string::npos ? text.size() : comma;
      if (end > begin) values.push_back(parse_one(text.substr(begin, end - begin)));
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
  } catch (const std::exception& e) {
    fail(std::string("cannot parse --values: ") + e.what());
  }
  return values;
}

void write_outputs(const crnoma_table* table, const std::string& out,
                   const std::string& plot) {
  if (out.empty() || out == "-") {
    char* csv = crnoma_table_csv_string(table);
    if (!csv) fail(crnoma_last_error());
    std::fputs(csv, stdout);
    crnoma_free_string(csv);
  } else if (crnoma_table_write_csv(table, out.c_str()) != CRNOMA_OK) {
    fail(crnoma_last_error());
  }
  if (!plot.empty() &&
      crnoma_table_write_plot_script(table, plot.c_str()) != CRNOMA_OK)
    fail(crnoma_last_error());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage-probability calculator for a two-hop underlay "
               "spectrum-sharing NOMA downlink: closed-form analysis plus a "
               "seeded Monte Carlo cross-validator"};
  app.require_subcommand(1);

  // sweep ---------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Evaluate outage probability along a parameter axis");
  std::string sw_config, sw_preset, sw_axis = "transmit_snr_db";
  std::string sw_values = "0:40:2", sw_mode = "both", sw_out, sw_plot;
  std::vector<std::string> sw_set;
  std::uint64_t sw_trials = 1'000'000, sw_seed = 1;
  int sw_workers = 0;
  sweep->add_option("--config", sw_config, "Scenario config file (JSON)");
  sweep->add_option("--preset", sw_preset,
                    "Scenario preset (base, base_oma, itc20, no_primary) or "
                    "sweep bundle (fig2, fig3, fig4)");
  sweep->add_option("--axis", sw_axis,
                    "Axis: transmit_snr_db, p_t_db, i_itc_db, phi, epsilon, "
                    "theta, kappa");
  sweep->add_option("--values", sw_values,
                    "Axis values: v1,v2,... or start:stop:step");
  sweep->add_option("--mode", sw_mode, "analytic, mc, or both");
  sweep->add_option("--trials", sw_trials, "Monte Carlo trials per point");
  sweep->add_option("--seed", sw_seed, "Monte Carlo base seed");
  sweep->add_option("--out", sw_out, "Output CSV path ('-' for stdout)");
  sweep->add_option("--plot", sw_plot, "Also write a gnuplot script here");
  sweep->add_option("--set", sw_set,
                    "Override a config key, e.g. --set p_t_db=25")
      ->take_all();
  sweep->add_option("--workers", sw_workers,
                    "Worker threads (0 = auto; CRNOMA_WORKERS overrides)");

  // outage ---------------------------------------------------------------
  auto* outage = app.add_subcommand(
      "outage", "Single-point outage probability for every user");
  std::string op_config, op_preset;
  std::vector<std::string> op_set;
  double op_rho_db = 20.0;
  std::uint64_t op_trials = 1'000'000, op_seed = 1;
  int op_workers = 0;
  outage->add_option("--config", op_config, "Scenario config file (JSON)");
  outage->add_option("--preset", op_preset, "Scenario preset name");
  outage->add_option("--rho-db", op_rho_db, "Transmit SNR in dB");
  outage->add_option("--trials", op_trials, "Monte Carlo trials");
  outage->add_option("--seed", op_seed, "Monte Carlo seed");
  outage->add_option("--set", op_set, "Override a config key")->take_all();
  outage->add_option("--workers", op_workers, "Worker threads (0 = auto)");

  // validate ---------------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "Validate a scenario config");
  std::string va_config, va_preset;
  std::vector<std::string> va_set;
  validate->add_option("--config", va_config, "Scenario config file (JSON)");
  validate->add_option("--preset", va_preset, "Scenario preset name");
  validate->add_option("--set", va_set, "Override a config key")->take_all();

  // presets ---------------------------------------------------------------
  auto* presets = app.add_subcommand("presets", "List bundled presets");

  // realizations ------------------------------------------------------------
  auto* realizations = app.add_subcommand(
      "realizations", "Dump raw channel realizations for debugging");
  std::string re_config, re_preset, re_out = "-";
  std::vector<std::string> re_set;
  double re_rho_db = 20.0;
  std::uint64_t re_trials = 1000, re_seed = 1;
  realizations->add_option("--config", re_config, "Scenario config file");
  realizations->add_option("--preset", re_preset, "Scenario preset name");
  realizations->add_option("--rho-db", re_rho_db, "Transmit SNR in dB");
  realizations->add_option("--trials", re_trials, "Number of rows");
  realizations->add_option("--seed", re_seed, "Seed");
  realizations->add_option("--out", re_out, "Output CSV path");
  realizations->add_option("--set", re_set, "Override a config key")->take_all();

  CLI11_PARSE(app, argc, argv);

  if (sweep->parsed()) {
    TablePtr table;
    const bool bundled = [&] {
      const int n = crnoma_sweep_preset_count();
      for (int i = 0; i < n; ++i) {
        const char* name = nullptr;
        crnoma_sweep_preset_info(i, &name);
        if (name && sw_preset == name) return true;
      }
      return false;
    }();
    if (bundled) {
      crnoma_table* raw = nullptr;
      if (crnoma_sweep_preset(sw_preset.c_str(), sw_mode.c_str(), sw_trials,
                              sw_seed, sw_workers, &raw) != CRNOMA_OK)
        fail(crnoma_last_error());
      table.reset(raw);
    } else {
      ConfigPtr cfg = load_scenario(sw_config, sw_preset, sw_set);
      const std::vector<double> values = parse_values(sw_values);
      crnoma_table* raw = nullptr;
      if (crnoma_sweep(cfg.get(), sw_axis.c_str(), values.data(),
                       static_cast<int>(values.size()), sw_mode.c_str(),
                       sw_trials, sw_seed, sw_workers, &raw) != CRNOMA_OK)
        fail(crnoma_last_error());
      table.reset(raw);
    }
    write_outputs(table.get(), sw_out, sw_plot);
    return 0;
  }

  if (outage->parsed()) {
    ConfigPtr cfg = load_scenario(op_config, op_preset, op_set);
    const double rho = std::pow(10.0, op_rho_db / 10.0);
    const int users = crnoma_config_num_users(cfg.get());
    std::vector<crnoma_mc_result> mc(users);
    if (crnoma_outage_montecarlo(cfg.get(), rho, op_trials, op_seed,
                                 op_workers, mc.data(), users) != CRNOMA_OK)
      fail(crnoma_last_error());
    std::printf("user,analytic_op,mc_op,mc_ci,hop1_cdf,hop2_cdf,flags\n");
    for (int u = 1; u <= users; ++u) {
      double op = 0.0;
      int boundary = 0;
      if (crnoma_outage_analytic(cfg.get(), u, rho, &op, &boundary) != CRNOMA_OK)
        fail(crnoma_last_error());
      std::printf("U%d,%.10g,%.10g,%.10g,%.10g,%.10g,%s\n", u, op,
                  mc[u - 1].op, mc[u - 1].ci, mc[u - 1].hop1_cdf,
                  mc[u - 1].hop2_cdf, boundary ? "boundary" : "-");
    }
    return 0;
  }

  if (validate->parsed()) {
    if (va_config.empty() && va_preset.empty())
      fail("validate needs --config or --preset");
    ConfigPtr cfg;
    if (!va_config.empty())
      cfg.reset(crnoma_config_from_file(va_config.c_str()));
    else
      cfg.reset(crnoma_config_preset(va_preset.c_str()));
    if (!cfg) fail(crnoma_last_error());
    for (const auto& kv : va_set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail("--set expects key=value: " + kv);
      if (crnoma_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                            kv.substr(eq + 1).c_str()) != CRNOMA_OK)
        fail(crnoma_last_error());
    }
    char* report = nullptr;
    const crnoma_status s = crnoma_config_validate(cfg.get(), &report);
    std::printf("%s\n", report ? report : "ok");
    crnoma_free_string(report);
    return s == CRNOMA_OK ? 0 : 1;
  }

  if (presets->parsed()) {
    std::printf("scenario presets:\n");
    for (int i = 0; i < crnoma_scenario_preset_count(); ++i) {
      const char* name = nullptr;
      const char* desc = nullptr;
      crnoma_scenario_preset_info(i, &name, &desc);
      std::printf("  %-12s %s\n", name, desc);
    }
    std::printf("sweep bundles:\n");
    for (int i = 0; i < crnoma_sweep_preset_count(); ++i) {
      const char* name = nullptr;
      crnoma_sweep_preset_info(i, &name);
      std::printf("  %s\n", name);
    }
    return 0;
  }

  if (realizations->parsed()) {
    ConfigPtr cfg = load_scenario(re_config, re_preset, re_set);
    const double rho = std::pow(10.0, re_rho_db / 10.0);
    std::string path = re_out;
    const bool to_stdout = path.empty() || path == "-";
    if (to_stdout) path = "/dev/stdout";
    if (crnoma_dump_realizations(cfg.get(), rho, re_trials, re_seed,
                                 path.c_str()) != CRNOMA_OK)
      fail(crnoma_last_error());
    return 0;
  }

  return 0;
}
