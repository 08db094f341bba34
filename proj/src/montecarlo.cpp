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

#include "crnoma/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "crnoma/analytic.hpp"
#include "crnoma/channel.hpp"
#include "crnoma/sidnr.hpp"

namespace crnoma {

namespace {

// Everything a trial needs that does not depend on the draw, precomputed once
// per (config, rho).
struct TrialPlan {
  SystemConfig config;
  double rho = 0.0;
  double zeta = 0.0;
  bool oma = false;
  std::vector<HopCoefficients> hop1;      // per user (own layer)
  std::vector<HopCoefficients> hop2;      // per user (own layer)
  std::vector<double> psi;                // per user, mode-aware
  // Lower-triangular SIC chain coefficients for the strict semantics.
  std::vector<std::vector<HopCoefficients>> hop1_layers;
  std::vector<std::vector<HopCoefficients>> hop2_layers;
  bool joint = false;
};

TrialPlan make_plan(const SystemConfig& config, double rho, bool joint) {
  require_valid(config);
  TrialPlan plan;
  plan.config = at_transmit_snr(config, rho);
  plan.rho = rho;
  plan.zeta = effective_error_variance(config.csi_theta, config.csi_kappa, rho);
  plan.oma = config.mode == AccessMode::kOma;
  plan.joint = joint && !plan.oma;
  const int b = config.num_users;
  for (int u = 1; u <= b; ++u) {
    if (plan.oma) {
      plan.hop1.push_back(oma_hop1_coefficients(plan.config, plan.zeta));
      plan.hop2.push_back(oma_hop2_coefficients(plan.config, u, plan.zeta));
    } else {
      plan.hop1.push_back(hop1_coefficients(plan.config, u, plan.zeta));
      plan.hop2.push_back(hop2_coefficients(plan.config, u, u, plan.zeta));
    }
    plan.psi.push_back(user_threshold(plan.config, u));
  }
  if (plan.joint) {
    for (int u = 1; u <= b; ++u) {
      std::vector<HopCoefficients> h1, h2;
      for (int layer = 1; layer <= u; ++layer) {
        h1.push_back(hop1_coefficients(plan.config, layer, plan.zeta));
        h2.push_back(hop2_coefficients(plan.config, u, layer, plan.zeta));
      }
      plan.hop1_layers.push_back(std::move(h1));
      plan.hop2_layers.push_back(std::move(h2));
    }
  }
  return plan;
}

struct Tally {
  std::vector<std::uint64_t> outage;
  std::vector<std::uint64_t> hop1_below;
  std::vector<std::uint64_t> hop2_below;
  std::vector<std::uint64_t> joint_outage;
  std::uint64_t clamped = 0;

  explicit Tally(int users)
      : outage(users, 0), hop1_below(users, 0), hop2_below(users, 0),
        joint_outage(users, 0) {}

  void operator+=(const Tally& other) {
    for (std::size_t i = 0; i < outage.size(); ++i) {
      outage[i] += other.outage[i];
      hop1_below[i] += other.hop1_below[i];
      hop2_below[i] += other.hop2_below[i];
      joint_outage[i] += other.joint_outage[i];
    }
    clamped += other.clamped;
  }
};

void run_one(const TrialPlan& plan, std::uint64_t seed, std::uint64_t trial_id,
             Tally& tally) {
  const ChannelRealization real =
      draw_realization(plan.config, plan.rho, RngStream{seed, trial_id});
  const auto& cfg = plan.config;
  const double p_s = secondary_transmit_power(cfg.pbar_s, cfg.i_itc, real.y,
                                              cfg.d_sd, cfg.pathloss);
  const double p_r = secondary_transmit_power(cfg.pbar_r, cfg.i_itc, real.v,
                                              cfg.d_rd, cfg.pathloss);
  const int b = cfg.num_users;
  for (int u = 0; u < b; ++u) {
    const double g1 = sidnr_hop1(plan.hop1[u], p_s, cfg.p_t, real.x, real.z);
    const double g2 =
        sidnr_hop2(plan.hop2[u], p_r, cfg.p_t, real.q[u], real.w[u]);
    const double psi = plan.psi[u];
    if (g1 < psi) ++tally.hop1_below[u];
    if (g2 < psi) ++tally.hop2_below[u];
    if (std::min(g1, g2) < psi) ++tally.outage[u];
    if (plan.joint) {
      bool fail = false;
      for (int layer = 0; layer <= u && !fail; ++layer) {
        const double l1 =
            sidnr_hop1(plan.hop1_layers[u][layer], p_s, cfg.p_t, real.x, real.z);
        const double l2 = sidnr_hop2(plan.hop2_layers[u][layer], p_r, cfg.p_t,
                                     real.q[u], real.w[u]);
        fail = std::min(l1, l2) < plan.psi[layer];
      }
      if (fail) ++tally.joint_outage[u];
    }
  }
  if (real.csi_clamped) ++tally.clamped;
}

Tally run_range(const TrialPlan& plan, std::uint64_t seed, std::uint64_t begin,
                std::uint64_t end) {
  Tally tally(plan.config.num_users);
  for (std::uint64_t t = begin; t < end; ++t) run_one(plan, seed, t, tally);
  return tally;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const int env = workers_from_env();
  if (env > 0) return env;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

TrialResult run_trial(const SystemConfig& config, double rho,
                      std::uint64_t seed, std::uint64_t trial_id) {
  const TrialPlan plan = make_plan(config, rho, false);
  const ChannelRealization real =
      draw_realization(plan.config, rho, RngStream{seed, trial_id});
  const auto& cfg = plan.config;
  const double p_s = secondary_transmit_power(cfg.pbar_s, cfg.i_itc, real.y,
                                              cfg.d_sd, cfg.pathloss);
  const double p_r = secondary_transmit_power(cfg.pbar_r, cfg.i_itc, real.v,
                                              cfg.d_rd, cfg.pathloss);
  TrialResult out;
  out.csi_clamped = real.csi_clamped;
  for (int u = 0; u < cfg.num_users; ++u) {
    const double g1 = sidnr_hop1(plan.hop1[u], p_s, cfg.p_t, real.x, real.z);
    const double g2 =
        sidnr_hop2(plan.hop2[u], p_r, cfg.p_t, real.q[u], real.w[u]);
    out.sidnr_hop1.push_back(g1);
    out.sidnr_hop2.push_back(g2);
    out.outage.push_back(std::min(g1, g2) < plan.psi[u] ? 1 : 0);
  }
  return out;
}

std::vector<OutageResult> estimate_outage(const SystemConfig& config,
                                          double rho,
                                          const EstimateOptions& options) {
  if (options.trials < 1)
    throw std::invalid_argument("estimate_outage: trials must be >= 1");
  const TrialPlan plan = make_plan(config, rho, options.joint_sic);
  const std::uint64_t n = options.trials;

  const int workers =
      static_cast<int>(std::min<std::uint64_t>(resolve_workers(options.workers), n));
  Tally total(config.num_users);
  if (workers <= 1) {
    total = run_range(plan, options.seed, 0, n);
  } else {
    // Contiguous ranges; totals are integer sums over all trials, so the
    // split has no effect on the result.
    std::vector<Tally> parts;
    parts.reserve(workers);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      parts.emplace_back(config.num_users);
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, n);
      if (begin >= end) break;
      threads.emplace_back([&plan, &parts, w, seed = options.seed, begin, end] {
        parts[w] = run_range(plan, seed, begin, end);
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& part : parts) total += part;
  }

  std::vector<OutageResult> results;
  for (int u = 0; u < config.num_users; ++u) {
    OutageResult r;
    r.user = u + 1;
    r.rho = rho;
    r.trials = n;
    r.empirical_op = static_cast<double>(total.outage[u]) / static_cast<double>(n);
    r.ci_halfwidth =
        3.0 * std::sqrt(r.empirical_op * (1.0 - r.empirical_op) /
                        static_cast<double>(n));
    r.hop1_cdf = static_cast<double>(total.hop1_below[u]) / static_cast<double>(n);
    r.hop2_cdf = static_cast<double>(total.hop2_below[u]) / static_cast<double>(n);
    if (options.with_analytic)
      r.analytic_op = outage_probability(config, u + 1, rho);
    r.joint_sic_mode = plan.joint;
    r.joint_op = plan.joint ? static_cast<double>(total.joint_outage[u]) /
                                  static_cast<double>(n)
                            : r.empirical_op;
    results.push_back(r);
  }
  return results;
}

std::vector<double> empirical_cdf(const SystemConfig& config, int hop,
                                  int user, double rho,
                                  std::span<const double> psi_grid,
                                  std::uint64_t trials, std::uint64_t seed) {
  if (hop != 1 && hop != 2)
    throw std::invalid_argument("empirical_cdf: hop must be 1 or 2");
  if (!std::is_sorted(psi_grid.begin(), psi_grid.end()))
    throw std::invalid_argument("empirical_cdf: psi grid must be ascending");
  const TrialPlan plan = make_plan(config, rho, false);
  const auto& cfg = plan.config;
  std::vector<double> samples;
  samples.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const ChannelRealization real =
        draw_realization(cfg, rho, RngStream{seed, t});
    const double p_s = secondary_transmit_power(cfg.pbar_s, cfg.i_itc, real.y,
                                                cfg.d_sd, cfg.pathloss);
    const double p_r = secondary_transmit_power(cfg.pbar_r, cfg.i_itc, real.v,
                                                cfg.d_rd, cfg.pathloss);
    if (hop == 1)
      samples.push_back(
          sidnr_hop1(plan.hop1[user - 1], p_s, cfg.p_t, real.x, real.z));
    else
      samples.push_back(sidnr_hop2(plan.hop2[user - 1], p_r, cfg.p_t,
                                   real.q[user - 1], real.w[user - 1]));
  }
  std::sort(samples.begin(), samples.end());
  std::vector<double> cdf;
  cdf.reserve(psi_grid.size());
  for (double psi : psi_grid) {
    const auto it = std::lower_bound(samples.begin(), samples.end(), psi);
    cdf.push_back(static_cast<double>(it - samples.begin()) /
                  static_cast<double>(trials));
  }
  return cdf;
}

void dump_realizations_csv(const SystemConfig& config, double rho,
                           std::uint64_t trials, std::uint64_t seed,
                           std::ostream& out) {
  require_valid(config);
  const SystemConfig cfg = at_transmit_snr(config, rho);
  out << "trial,x,y,z,v";
  for (int u = 1; u <= cfg.num_users; ++u) out << ",q" << u;
  for (int u = 1; u <= cfg.num_users; ++u) out << ",w" << u;
  out << ",p_s,p_r,csi_clamped\n";
  char buf[64];
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.10g", v);
    out << buf;
  };
  for (std::uint64_t t = 0; t < trials; ++t) {
    const ChannelRealization real =
        draw_realization(cfg, rho, RngStream{seed, t});
    out << t;
    put(real.x);
    put(real.y);
    put(real.z);
    put(real.v);
    for (double q : real.q) put(q);
    for (double w : real.w) put(w);
    put(secondary_transmit_power(cfg.pbar_s, cfg.i_itc, real.y, cfg.d_sd,
                                 cfg.pathloss));
    put(secondary_transmit_power(cfg.pbar_r, cfg.i_itc, real.v, cfg.d_rd,
                                 cfg.pathloss));
    out << ',' << (real.csi_clamped ? 1 : 0) << '\n';
  }
}

}  // namespace crnoma
