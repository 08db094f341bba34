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

#include "crnoma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "crnoma/analytic.hpp"
#include "crnoma/montecarlo.hpp"

namespace crnoma {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ (salt * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string user_label(int user, const std::string& series) {
  std::string label = "U" + std::to_string(user);
  if (!series.empty()) label += ":" + series;
  return label;
}

std::string join_flags(bool boundary, bool clamped) {
  std::string f;
  if (boundary) f = "boundary";
  if (clamped) f += (f.empty() ? "" : ";") + std::string("csi_clamped");
  return f.empty() ? "-" : f;
}

// Rows of one sweep point, in fixed (user x mode) order.
std::vector<ResultRow> evaluate_point(const SweepSpec& spec, std::size_t index,
                                      int mc_workers) {
  const auto [config, rho] = apply_axis(spec.base, spec.axis, spec.values[index]);
  std::vector<ResultRow> rows;
  const bool analytic =
      spec.mode == EvalMode::kAnalytic || spec.mode == EvalMode::kBoth;
  const bool mc =
      spec.mode == EvalMode::kMonteCarlo || spec.mode == EvalMode::kBoth;

  if (analytic) {
    for (int u = 1; u <= config.num_users; ++u) {
      const OutageBreakdown b = outage_breakdown(config, u, rho);
      ResultRow row;
      row.axis = spec.values[index];
      row.user = user_label(u, spec.series);
      row.mode = "analytic";
      row.op = b.op;
      row.ci = 0.0;
      row.flags = join_flags(b.hop1_boundary || b.hop2_boundary, b.csi_clamped);
      rows.push_back(std::move(row));
    }
  }
  if (mc) {
    EstimateOptions opts;
    opts.trials = spec.trials;
    opts.seed = mix_seed(spec.seed, index);
    opts.workers = mc_workers;
    opts.with_analytic = false;
    const auto results = estimate_outage(config, rho, opts);
    for (const auto& r : results) {
      ResultRow row;
      row.axis = spec.values[index];
      row.user = user_label(r.user, spec.series);
      row.mode = "mc";
      row.op = r.empirical_op;
      row.ci = r.ci_halfwidth;
      const OutageBreakdown b = outage_breakdown(config, r.user, rho);
      row.flags = join_flags(b.hop1_boundary || b.hop2_boundary, b.csi_clamped);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const int env = workers_from_env();
  if (env > 0) return env;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

bool is_valid_axis(const std::string& axis) {
  for (const char* name : kAxisNames)
    if (axis == name) return true;
  return false;
}

ValidationReport validate_sweep(const SweepSpec& spec) {
  ValidationReport report = validate(spec.base);
  if (!is_valid_axis(spec.axis))
    report.violations.push_back("axis: unknown axis \"" + spec.axis + "\"");
  if (spec.values.empty())
    report.violations.push_back("values: axis value list is empty");
  for (double v : spec.values)
    if (!std::isfinite(v))
      report.violations.push_back("values: axis values must be finite");
  if (spec.mode != EvalMode::kAnalytic && spec.trials < 1000)
    report.violations.push_back(
        "trials: must be >= 1000 when Monte Carlo is selected");
  return report;
}

std::pair<SystemConfig, double> apply_axis(const SystemConfig& base,
                                           const std::string& axis,
                                           double value) {
  SystemConfig config = base;
  double rho = reference_snr(base);
  if (axis == "transmit_snr_db") {
    rho = db_to_linear(value);
    config = at_transmit_snr(std::move(config), rho);
  } else if (axis == "p_t_db") {
    config.p_t = db_to_linear(value);
  } else if (axis == "i_itc_db") {
    config.i_itc = db_to_linear(value);
  } else if (axis == "phi") {
    config.hi_source = value;
    config.hi_primary = value;
    for (auto& p : config.hi_user) p = value;
  } else if (axis == "epsilon") {
    for (auto& e : config.sic_residue) e = value;
  } else if (axis == "theta") {
    config.csi_theta = value;
  } else if (axis == "kappa") {
    config.csi_kappa = value;
  } else {
    throw std::invalid_argument("unknown sweep axis: " + axis);
  }
  return {std::move(config), rho};
}

ResultTable run_sweep(const SweepSpec& spec, int workers) {
  return run_sweeps({spec}, workers);
}

ResultTable run_sweeps(const std::vector<SweepSpec>& specs, int workers) {
  for (const auto& spec : specs) {
    const auto report = validate_sweep(spec);
    if (!report.ok())
      throw std::invalid_argument("invalid sweep spec: " + report.summary());
  }

  struct Point {
    const SweepSpec* spec;
    std::size_t value_index;
  };
  std::vector<Point> points;
  for (const auto& spec : specs)
    for (std::size_t i = 0; i < spec.values.size(); ++i)
      points.push_back({&spec, i});

  const int pool = resolve_workers(workers);
  std::vector<std::vector<ResultRow>> slots(points.size());

  if (pool <= 1 || points.size() <= 1) {
    // Trials of each point still fan out over the pool.
    for (std::size_t i = 0; i < points.size(); ++i)
      slots[i] = evaluate_point(*points[i].spec, points[i].value_index, pool);
  } else {
    // Points are dispatched to the pool; each point runs its trials serially.
    // Output order is fixed by the slot index, not completion order.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    const int n_threads = static_cast<int>(
        std::min<std::size_t>(pool, points.size()));
    for (int w = 0; w < n_threads; ++w) {
      threads.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= points.size()) return;
          slots[i] = evaluate_point(*points[i].spec, points[i].value_index, 1);
        }
      });
    }
    for (auto& t : threads) t.join();
  }

  ResultTable table;
  table.axis_name = specs.empty() ? "" : specs.front().axis;
  for (auto& rows : slots)
    for (auto& row : rows) table.rows.push_back(std::move(row));
  return table;
}

std::string csv_string(const ResultTable& table) {
  std::string out = "axis,user,mode,op,ci,flags\n";
  for (const auto& r : table.rows) {
    out += format_double(r.axis);
    out += ',';
    out += r.user;
    out += ',';
    out += r.mode;
    out += ',';
    out += format_double(r.op);
    out += ',';
    out += format_double(r.ci);
    out += ',';
    out += r.flags;
    out += '\n';
  }
  return out;
}

void emit_csv(const ResultTable& table, const std::string& path) {
  if (table.rows.empty())
    throw std::invalid_argument("emit_csv: refusing to write an empty table");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << csv_string(table);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ResultTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "axis,user,mode,op,ci,flags")
    throw std::runtime_error("parse_csv: missing or malformed header");
  ResultTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string axis, user, mode, op, ci, flags;
    if (!std::getline(row, axis, ',') || !std::getline(row, user, ',') ||
        !std::getline(row, mode, ',') || !std::getline(row, op, ',') ||
        !std::getline(row, ci, ',') || !std::getline(row, flags))
      throw std::runtime_error("parse_csv: malformed row: " + line);
    table.rows.push_back(ResultRow{std::stod(axis), user, mode, std::stod(op),
                                   std::stod(ci), flags});
  }
  return table;
}

std::string plot_script_string(const ResultTable& table) {
  // Series keyed by (user, mode), in first-appearance order.
  std::vector<std::pair<std::string, std::vector<const ResultRow*>>> series;
  for (const auto& r : table.rows) {
    const std::string key = r.user + " " + r.mode;
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const auto& s) { return s.first == key; });
    if (it == series.end()) {
      series.push_back({key, {}});
      it = std::prev(series.end());
    }
    it->second.push_back(&r);
  }

  std::string out;
  out += "# outage-probability curves (generated; feed to gnuplot)\n";
  out += "set datafile separator whitespace\n";
  out += "set logscale y\n";
  out += "set xlabel \"" + (table.axis_name.empty() ? std::string("axis")
                                                    : table.axis_name) + "\"\n";
  out += "set ylabel \"outage probability\"\n";
  out += "set yrange [1e-5:1]\n";
  out += "set key outside right\n";
  out += "set grid\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += "$series" + std::to_string(i) + " << EOD\n";
    for (const ResultRow* r : series[i].second)
      out += format_double(r->axis) + " " + format_double(r->op) + " " +
             format_double(r->ci) + "\n";
    out += "EOD\n";
  }
  out += "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out += ", \\\n     ";
    out += "$series" + std::to_string(i) + " using 1:2 with linespoints title \"" +
           series[i].first + "\"";
  }
  out += "\n";
  return out;
}

void emit_plot_script(const ResultTable& table, const std::string& path) {
  if (table.rows.empty())
    throw std::invalid_argument(
        "emit_plot_script: refusing to write an empty table");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << plot_script_string(table);
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<double> snr_grid() {
  std::vector<double> v;
  for (int db = 0; db <= 40; db += 2) v.push_back(db);
  return v;
}

SweepSpec snr_spec(SystemConfig base, std::string series, EvalMode mode,
                   std::uint64_t trials, std::uint64_t seed) {
  SweepSpec spec;
  spec.base = std::move(base);
  spec.axis = "transmit_snr_db";
  spec.values = snr_grid();
  spec.mode = mode;
  spec.trials = trials;
  spec.seed = seed;
  spec.series = std::move(series);
  return spec;
}

}  // namespace

std::vector<std::string> sweep_preset_names() { return {"fig2", "fig3", "fig4"}; }

std::vector<SweepSpec> sweep_preset(const std::string& name, EvalMode mode,
                                    std::uint64_t trials, std::uint64_t seed) {
  const SystemConfig base = *preset_config("base");
  std::vector<SweepSpec> specs;

  if (name == "fig2") {
    // Ideal system: cap at 20 dB vs none, primary power off/10 dB/25 dB,
    // NOMA and the orthogonal baseline.
    for (const auto& [itc, itc_tag] :
         std::vector<std::pair<double, std::string>>{
             {100.0, "itc20"},
             {std::numeric_limits<double>::infinity(), "itcinf"}}) {
      for (const auto& [pt, pt_tag] : std::vector<std::pair<double, std::string>>{
               {0.0, "pt_off"}, {10.0, "pt10"}, {db_to_linear(25.0), "pt25"}}) {
        for (const AccessMode m : {AccessMode::kNoma, AccessMode::kOma}) {
          SystemConfig c = base;
          c.i_itc = itc;
          c.p_t = pt;
          c.mode = m;
          const std::string tag = itc_tag + "_" + pt_tag +
                                  (m == AccessMode::kOma ? "_oma" : "");
          specs.push_back(snr_spec(std::move(c), tag, mode, trials, seed));
        }
      }
    }
  } else if (name == "fig3") {
    // SIC and hardware imperfections, primary at 10 dB, no cap.
    const std::vector<std::pair<std::string, SystemConfig>> variants = [&] {
      std::vector<std::pair<std::string, SystemConfig>> v;
      v.push_back({"ideal", base});
      for (double eps : {0.005, 0.03}) {
        SystemConfig c = base;
        c.sic_residue.assign(c.num_users - 1, eps);
        v.push_back({"eps" + format_double(eps), c});
      }
      for (double phi : {0.1, 0.15}) {
        SystemConfig c = base;
        c.hi_source = phi;
        c.hi_primary = phi;
        c.hi_user.assign(c.num_users, phi);
        v.push_back({"phi" + format_double(phi), c});
      }
      return v;
    }();
    for (const auto& [tag, c] : variants)
      specs.push_back(snr_spec(c, tag, mode, trials, seed));
  } else if (name == "fig4") {
    // Channel-error regimes, NOMA and baseline.
    for (const AccessMode m : {AccessMode::kNoma, AccessMode::kOma}) {
      const std::string suffix = m == AccessMode::kOma ? "_oma" : "";
      SystemConfig perfect = base;
      perfect.mode = m;
      specs.push_back(snr_spec(perfect, "perfect" + suffix, mode, trials, seed));
      for (double theta : {0.001, 0.01, 0.1}) {
        SystemConfig c = base;
        c.mode = m;
        c.csi_theta = theta;
        specs.push_back(snr_spec(c, "theta" + format_double(theta) + suffix,
                                 mode, trials, seed));
      }
      SystemConfig snrdep = base;
      snrdep.mode = m;
      snrdep.csi_theta = 10.0;
      snrdep.csi_kappa = 1.5;
      specs.push_back(
          snr_spec(snrdep, "theta10_kappa1.5" + suffix, mode, trials, seed));
    }
  } else {
    throw std::invalid_argument("unknown sweep preset: " + name);
  }
  return specs;
}

}  // namespace crnoma
