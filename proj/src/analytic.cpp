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

#include "crnoma/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crnoma/channel.hpp"
#include "crnoma/expint.hpp"

namespace crnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance for "psi sits on the ceiling": coefficients diverge there, so the
// CDF snaps to 1 once the margin drops below pa * 1e-12.
constexpr double kBoundaryMargin = 1e-12;

struct HopContext {
  BranchInputs inputs;
  bool csi_clamped = false;
};

double zeta_for(const SystemConfig& config, double rho) {
  return effective_error_variance(config.csi_theta, config.csi_kappa, rho);
}

// lambda of the estimated desired link: 1 / (1 - zeta), floored.
double lambda_desired_for(double zeta, bool& clamped) {
  double var = 1.0 - zeta;
  if (var < kEstimatedGainFloor) {
    var = kEstimatedGainFloor;
    clamped = true;
  }
  return 1.0 / var;
}

BranchInputs inputs_from(const HopCoefficients& c, double pbar, double cap,
                         double p_t, double psi, double lambda_des) {
  BranchInputs in;
  in.pa = c.pa;
  in.a_self = c.a_self;
  in.c_csi = c.c_csi;
  in.interference = c.d_int * p_t;
  in.pbar = pbar;
  in.cap = cap;
  in.noise = c.dist * c.noise;
  in.psi = psi;
  in.lambda_des = lambda_des;
  in.lambda_cap = 1.0;
  in.lambda_int = 1.0;
  return in;
}

// rho is the transmit SNR, which under the sigma^2 = 1 normalization doubles
// as the per-hop power budget (matching at_transmit_snr on the MC side).
HopContext hop1_context(const SystemConfig& config, int user, double rho,
                        double psi, bool oma) {
  HopContext ctx;
  const double zeta = zeta_for(config, rho);
  const double lambda_des = lambda_desired_for(zeta, ctx.csi_clamped);
  const HopCoefficients c = oma ? oma_hop1_coefficients(config, zeta)
                                : hop1_coefficients(config, user, zeta);
  const double cap =
      std::isinf(config.i_itc)
          ? kInf
          : config.i_itc * std::pow(config.d_sd, config.pathloss);
  ctx.inputs = inputs_from(c, rho, cap, config.p_t, psi, lambda_des);
  return ctx;
}

HopContext hop2_context(const SystemConfig& config, int receiver, int layer,
                        double rho, double psi, bool oma) {
  HopContext ctx;
  const double zeta = zeta_for(config, rho);
  const double lambda_des = lambda_desired_for(zeta, ctx.csi_clamped);
  const HopCoefficients c = oma ? oma_hop2_coefficients(config, receiver, zeta)
                                : hop2_coefficients(config, receiver, layer, zeta);
  const double cap =
      std::isinf(config.i_itc)
          ? kInf
          : config.i_itc * std::pow(config.d_rd, config.pathloss);
  ctx.inputs = inputs_from(c, rho, cap, config.p_t, psi, lambda_des);
  return ctx;
}

}  // namespace

AnalyticCoefficients branch_coefficients(const BranchInputs& in) {
  AnalyticCoefficients c;
  c.psi = in.psi;
  c.lambda_des = in.lambda_des;
  c.lambda_cap = in.lambda_cap;
  c.lambda_int = in.lambda_int;
  c.degenerate_cap = in.cap == 0.0;

  const double den = in.pa - in.a_self * in.psi;
  c.valid = den > in.pa * kBoundaryMargin;
  if (!c.valid || in.psi <= 0.0) return c;

  c.k_delta = in.interference * in.psi / (in.pbar * den);
  c.m_delta = in.noise * in.psi / (in.pbar * den);
  c.l_csi = in.c_csi * in.psi / den;
  if (std::isinf(in.cap)) {
    c.lambda_big = kInf;
    c.k_ups = 0.0;
    c.m_ups = 0.0;
  } else if (in.cap > 0.0) {
    c.lambda_big = in.cap / in.pbar;
    c.k_ups = in.interference * in.psi / (in.cap * den);
    c.m_ups = in.noise * in.psi / (in.cap * den);
    if (c.k_ups > 0.0) {
      c.mu = c.lambda_int + c.lambda_des * c.lambda_big * c.k_ups;
      c.xi = c.m_ups / c.k_ups + c.lambda_cap / (c.lambda_des * c.k_ups);
    }
  }
  return c;
}

double delta_term(const AnalyticCoefficients& c) {
  if (c.psi <= 0.0 || c.degenerate_cap) return 0.0;
  const double cap_factor =
      std::isinf(c.lambda_big)
          ? 1.0
          : -std::expm1(-c.lambda_cap * c.lambda_big);
  const double z_part =
      1.0 - c.lambda_int *
                std::exp(-c.lambda_des * (c.m_delta + c.l_csi)) /
                (c.lambda_int + c.lambda_des * c.k_delta);
  return cap_factor * z_part;
}

double upsilon_term(const AnalyticCoefficients& c) {
  if (c.psi <= 0.0) return 0.0;
  if (c.degenerate_cap) return 1.0;  // zero cap: the power is cut to nothing
  if (std::isinf(c.lambda_big)) return 0.0;

  const double head = std::exp(-c.lambda_cap * c.lambda_big);
  if (c.k_ups == 0.0) {
    // No interferer term: the inner integral is already elementary.
    const double rate = c.lambda_cap + c.lambda_des * c.m_ups;
    return head - c.lambda_cap *
                      std::exp(-c.lambda_des * c.l_csi - c.lambda_big * rate) /
                      rate;
  }
  const double scaled_ei = expi_scaled(c.mu * c.xi);  // e^(mu xi) Ei(-mu xi)
  const double prefactor =
      c.lambda_cap * c.lambda_int / (c.lambda_des * c.k_ups);
  const double envelope =
      std::exp(-c.lambda_big * (c.lambda_cap + c.lambda_des * c.m_ups) -
               c.lambda_des * c.l_csi);
  return head + prefactor * envelope * scaled_ei;
}

double branch_cdf(const AnalyticCoefficients& c) {
  if (c.psi <= 0.0) return 0.0;
  if (!c.valid || c.degenerate_cap) return 1.0;
  return std::clamp(delta_term(c) + upsilon_term(c), 0.0, 1.0);
}

double threshold_psi(double rate_threshold) {
  return std::exp2(2.0 * rate_threshold) - 1.0;
}

double user_threshold(const SystemConfig& config, int user) {
  const double rate = config.rate_thresholds.at(user - 1);
  if (config.mode == AccessMode::kOma)
    return oma_threshold(config.num_users, rate);
  return threshold_psi(rate);
}

BranchInputs hop1_inputs(const SystemConfig& config, int user, double rho,
                         double psi) {
  return hop1_context(config, user, rho, psi, false).inputs;
}

BranchInputs hop2_inputs(const SystemConfig& config, int receiver, int layer,
                         double rho, double psi) {
  return hop2_context(config, receiver, layer, rho, psi, false).inputs;
}

BranchInputs oma_hop1_inputs(const SystemConfig& config, double rho,
                             double psi) {
  return hop1_context(config, 1, rho, psi, true).inputs;
}

BranchInputs oma_hop2_inputs(const SystemConfig& config, int user, double rho,
                             double psi) {
  return hop2_context(config, user, user, rho, psi, true).inputs;
}

double cdf_gamma_r_j(const SystemConfig& config, int user, double rho,
                     double psi) {
  return branch_cdf(branch_coefficients(hop1_inputs(config, user, rho, psi)));
}

double cdf_gamma_b_j(const SystemConfig& config, int receiver, int layer,
                     double rho, double psi) {
  return branch_cdf(
      branch_coefficients(hop2_inputs(config, receiver, layer, rho, psi)));
}

double cdf_gamma_r_b(const SystemConfig& config, double rho, double psi) {
  return cdf_gamma_r_j(config, config.num_users, rho, psi);
}

double cdf_gamma_b(const SystemConfig& config, double rho, double psi) {
  return cdf_gamma_b_j(config, config.num_users, config.num_users, rho, psi);
}

OutageBreakdown outage_breakdown(const SystemConfig& config, int user,
                                 double rho) {
  require_valid(config);
  const bool oma = config.mode == AccessMode::kOma;
  const double psi = user_threshold(config, user);

  OutageBreakdown out;
  HopContext h1 = hop1_context(config, user, rho, psi, oma);
  HopContext h2 = hop2_context(config, user, user, rho, psi, oma);
  const AnalyticCoefficients c1 = branch_coefficients(h1.inputs);
  const AnalyticCoefficients c2 = branch_coefficients(h2.inputs);
  out.hop1_cdf = branch_cdf(c1);
  out.hop2_cdf = branch_cdf(c2);
  out.hop1_boundary = psi > 0.0 && !c1.valid;
  out.hop2_boundary = psi > 0.0 && !c2.valid;
  out.csi_clamped = h1.csi_clamped || h2.csi_clamped;
  out.op = out.hop1_cdf + out.hop2_cdf - out.hop1_cdf * out.hop2_cdf;
  out.op = std::clamp(out.op, std::max(out.hop1_cdf, out.hop2_cdf), 1.0);
  return out;
}

double outage_probability(const SystemConfig& config, int user, double rho) {
  return outage_breakdown(config, user, rho).op;
}

double max_tolerable_sic(double alpha1, double alpha2, double phi,
                         double psi2) {
  const double bound = (alpha2 - phi * phi) / (alpha1 * psi2);
  return std::max(bound, 0.0);
}

}  // namespace crnoma
