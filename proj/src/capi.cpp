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

#include "crnoma.h"

#include <cstring>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "crnoma/analytic.hpp"
#include "crnoma/config.hpp"
#include "crnoma/montecarlo.hpp"
#include "crnoma/sweep.hpp"

struct crnoma_config {
  crnoma::SystemConfig value;
};

struct crnoma_table {
  crnoma::ResultTable value;
};

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `fn`, translating exceptions into status codes + last-error text.
template <typename Fn>
crnoma_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return CRNOMA_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return CRNOMA_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return CRNOMA_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    set_error(e.what());
    return CRNOMA_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CRNOMA_ERR_INTERNAL;
  }
}

template <typename Fn>
crnoma_config* guarded_config(Fn&& fn) {
  crnoma_config* out = nullptr;
  guarded([&]() -> crnoma_status {
    out = new crnoma_config{fn()};
    return CRNOMA_OK;
  });
  return out;
}

crnoma_status require(bool cond, const char* message) {
  if (cond) return CRNOMA_OK;
  set_error(message);
  return CRNOMA_ERR_INVALID_ARGUMENT;
}

crnoma::EvalMode parse_mode(const char* mode) {
  const std::string m = mode ? mode : "";
  if (m == "analytic") return crnoma::EvalMode::kAnalytic;
  if (m == "mc" || m == "montecarlo") return crnoma::EvalMode::kMonteCarlo;
  if (m == "both") return crnoma::EvalMode::kBoth;
  throw std::invalid_argument("mode must be \"analytic\", \"mc\" or \"both\"");
}

}  // namespace

extern "C" {

const char* crnoma_version(void) { return "1.0.0"; }

const char* crnoma_last_error(void) { return g_last_error.c_str(); }

crnoma_config* crnoma_config_preset(const char* name) {
  if (!name) {
    set_error("preset name is null");
    return nullptr;
  }
  auto cfg = crnoma::preset_config(name);
  if (!cfg) {
    set_error("unknown preset: " + std::string(name));
    return nullptr;
  }
  return new crnoma_config{*cfg};
}

crnoma_config* crnoma_config_from_json(const char* json_text) {
  if (!json_text) {
    set_error("json text is null");
    return nullptr;
  }
  return guarded_config(
      [&] { return crnoma::config_from_json(json_text); });
}

crnoma_config* crnoma_config_from_file(const char* path) {
  if (!path) {
    set_error("path is null");
    return nullptr;
  }
  return guarded_config([&] { return crnoma::load_config(path); });
}

crnoma_config* crnoma_config_clone(const crnoma_config* config) {
  if (!config) {
    set_error("config handle is null");
    return nullptr;
  }
  return new crnoma_config{config->value};
}

void crnoma_config_free(crnoma_config* config) { delete config; }

crnoma_status crnoma_config_set(crnoma_config* config, const char* key,
                                const char* value_json) {
  if (auto s = require(config && key && value_json, "null argument"); s)
    return s;
  return guarded([&]() -> crnoma_status {
    // Route through the file-format parser so *_db handling and broadcast
    // rules stay identical to config files.
    nlohmann::json j = nlohmann::json::parse(crnoma::to_json(config->value));
    const std::string k = key;
    // A *_db override must not be shadowed by the serialized linear field.
    if (k.size() > 3 && k.ends_with("_db")) j.erase(k.substr(0, k.size() - 3));
    if (k == "transmit_snr_db") {
      j.erase("pbar_s");
      j.erase("pbar_r");
    }
    j[k] = nlohmann::json::parse(value_json);
    config->value = crnoma::config_from_json(j.dump());
    return CRNOMA_OK;
  });
}

char* crnoma_config_json(const crnoma_config* config) {
  if (!config) {
    set_error("config handle is null");
    return nullptr;
  }
  return dup_string(crnoma::to_json(config->value));
}

void crnoma_free_string(char* s) { delete[] s; }

crnoma_status crnoma_config_validate(const crnoma_config* config,
                                     char** report) {
  if (auto s = require(config != nullptr, "config handle is null"); s) return s;
  const auto r = crnoma::validate(config->value);
  if (report) *report = dup_string(r.summary());
  if (r.ok()) return CRNOMA_OK;
  set_error(r.summary());
  return CRNOMA_ERR_VALIDATION;
}

int crnoma_config_num_users(const crnoma_config* config) {
  return config ? config->value.num_users : 0;
}

int crnoma_scenario_preset_count(void) {
  return static_cast<int>(crnoma::scenario_presets().size());
}

crnoma_status crnoma_scenario_preset_info(int index, const char** name,
                                          const char** description) {
  const auto& presets = crnoma::scenario_presets();
  if (auto s = require(index >= 0 && index < static_cast<int>(presets.size()),
                       "preset index out of range");
      s)
    return s;
  if (name) *name = presets[index].name.c_str();
  if (description) *description = presets[index].description.c_str();
  return CRNOMA_OK;
}

crnoma_status crnoma_outage_analytic(const crnoma_config* config, int user,
                                     double rho, double* op, int* boundary) {
  if (auto s = require(config && op, "null argument"); s) return s;
  return guarded([&]() -> crnoma_status {
    const auto b = crnoma::outage_breakdown(config->value, user, rho);
    *op = b.op;
    if (boundary) *boundary = b.hop1_boundary || b.hop2_boundary;
    return CRNOMA_OK;
  });
}

crnoma_status crnoma_outage_montecarlo(const crnoma_config* config, double rho,
                                       uint64_t trials, uint64_t seed,
                                       int workers, crnoma_mc_result* results,
                                       int results_len) {
  if (auto s = require(config && results, "null argument"); s) return s;
  if (auto s = require(results_len >= config->value.num_users,
                       "results buffer smaller than num_users");
      s)
    return s;
  return guarded([&]() -> crnoma_status {
    crnoma::EstimateOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    opts.workers = workers;
    opts.with_analytic = false;
    const auto estimates = crnoma::estimate_outage(config->value, rho, opts);
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      results[i].op = estimates[i].empirical_op;
      results[i].ci = estimates[i].ci_halfwidth;
      results[i].hop1_cdf = estimates[i].hop1_cdf;
      results[i].hop2_cdf = estimates[i].hop2_cdf;
      results[i].trials = estimates[i].trials;
    }
    return CRNOMA_OK;
  });
}

crnoma_status crnoma_max_tolerable_sic(const crnoma_config* config,
                                       double* bound) {
  if (auto s = require(config && bound, "null argument"); s) return s;
  if (auto s = require(config->value.num_users == 2,
                       "tolerable-SIC bound is defined for two users");
      s)
    return s;
  const auto& c = config->value;
  const double psi2 = crnoma::threshold_psi(c.rate_thresholds.at(1));
  *bound = crnoma::max_tolerable_sic(c.alpha.at(0), c.alpha.at(1),
                                     c.hi_source, psi2);
  return CRNOMA_OK;
}

crnoma_status crnoma_dump_realizations(const crnoma_config* config, double rho,
                                       uint64_t trials, uint64_t seed,
                                       const char* path) {
  if (auto s = require(config && path, "null argument"); s) return s;
  return guarded([&]() -> crnoma_status {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " +
                                       std::string(path));
    crnoma::dump_realizations_csv(config->value, rho, trials, seed, out);
    if (!out) throw std::runtime_error("write failed: " + std::string(path));
    return CRNOMA_OK;
  });
}

crnoma_status crnoma_sweep(const crnoma_config* config, const char* axis,
                           const double* values, int n_values,
                           const char* mode, uint64_t trials, uint64_t seed,
                           int workers, crnoma_table** out) {
  if (auto s = require(config && axis && out && (values || n_values == 0),
                       "null argument");
      s)
    return s;
  return guarded([&]() -> crnoma_status {
    crnoma::SweepSpec spec;
    spec.base = config->value;
    spec.axis = axis;
    spec.values.assign(values, values + n_values);
    spec.mode = parse_mode(mode);
    spec.trials = trials;
    spec.seed = seed;
    const auto report = crnoma::validate_sweep(spec);
    if (!report.ok()) throw std::invalid_argument(report.summary());
    *out = new crnoma_table{crnoma::run_sweep(spec, workers)};
    return CRNOMA_OK;
  });
}

int crnoma_sweep_preset_count(void) {
  return static_cast<int>(crnoma::sweep_preset_names().size());
}

crnoma_status crnoma_sweep_preset_info(int index, const char** name) {
  static const std::vector<std::string> names = crnoma::sweep_preset_names();
  if (auto s = require(index >= 0 && index < static_cast<int>(names.size()),
                       "sweep preset index out of range");
      s)
    return s;
  if (name) *name = names[index].c_str();
  return CRNOMA_OK;
}

crnoma_status crnoma_sweep_preset(const char* name, const char* mode,
                                  uint64_t trials, uint64_t seed, int workers,
                                  crnoma_table** out) {
  if (auto s = require(name && out, "null argument"); s) return s;
  return guarded([&]() -> crnoma_status {
    const auto specs =
        crnoma::sweep_preset(name, parse_mode(mode), trials, seed);
    *out = new crnoma_table{crnoma::run_sweeps(specs, workers)};
    return CRNOMA_OK;
  });
}

int crnoma_table_rows(const crnoma_table* table) {
  return table ? static_cast<int>(table->value.rows.size()) : 0;
}

crnoma_status crnoma_table_row(const crnoma_table* table, int index,
                               double* axis, const char** user,
                               const char** mode, double* op, double* ci,
                               const char** flags) {
  if (auto s = require(table != nullptr, "table handle is null"); s) return s;
  if (auto s = require(index >= 0 &&
                           index < static_cast<int>(table->value.rows.size()),
                       "row index out of range");
      s)
    return s;
  const auto& row = table->value.rows[index];
  if (axis) *axis = row.axis;
  if (user) *user = row.user.c_str();
  if (mode) *mode = row.mode.c_str();
  if (op) *op = row.op;
  if (ci) *ci = row.ci;
  if (flags) *flags = row.flags.c_str();
  return CRNOMA_OK;
}

char* crnoma_table_csv_string(const crnoma_table* table) {
  if (!table) {
    set_error("table handle is null");
    return nullptr;
  }
  return dup_string(crnoma::csv_string(table->value));
}

crnoma_status crnoma_table_write_csv(const crnoma_table* table,
                                     const char* path) {
  if (auto s = require(table && path, "null argument"); s) return s;
  return guarded([&]() -> crnoma_status {
    crnoma::emit_csv(table->value, path);
    return CRNOMA_OK;
  });
}

crnoma_status crnoma_table_write_plot_script(const crnoma_table* table,
                                             const char* path) {
  if (auto s = require(table && path, "null argument"); s) return s;
  return guarded([&]() -> crnoma_status {
    crnoma::emit_plot_script(table->value, path);
    return CRNOMA_OK;
  });
}

void crnoma_table_free(crnoma_table* table) { delete table; }

}  // extern "C"
