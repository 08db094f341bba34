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

#include "crnoma/sidnr.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crnoma {

namespace {

void check_user_index(const SystemConfig& config, int user, const char* what) {
  if (user < 1 || user > config.num_users)
    throw std::out_of_range(std::string(what) + ": user index out of range");
}

// Common SIDNR shape of both hops. The denominator accumulates in extended
// precision in a fixed order (self, CSI, interference, noise) so results are
// bit-stable across build configurations.
double evaluate_sidnr(const HopCoefficients& c, double p_node,
                      double p_primary, double desired_gain,
                      double interferer_gain) {
  if (desired_gain <= 0.0) return 0.0;
  const double numerator = c.pa * p_node * desired_gain;
  long double den = static_cast<long double>(c.a_self) * p_node * desired_gain;
  den += static_cast<long double>(c.c_csi) * p_node;
  den += static_cast<long double>(c.d_int) * p_primary * interferer_gain;
  den += static_cast<long double>(c.dist) * c.noise;
  if (den <= 0.0L)
    return numerator > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return static_cast<double>(numerator / den);
}

}  // namespace

HopCoefficients hop1_coefficients(const SystemConfig& config, int user,
                                  double zeta_sr) {
  check_user_index(config, user, "hop1_coefficients");
  const int j = user - 1;
  HopCoefficients c;
  c.pa = config.alpha[j];
  for (int n = j + 1; n < config.num_users; ++n) c.omega += config.alpha[n];
  for (int n = 0; n < j; ++n)
    c.omega_tilde += config.sic_residue[n] * config.alpha[n];
  const double phi2 = config.hi_source * config.hi_source;
  c.a_self = c.omega + c.omega_tilde + phi2;
  c.c_csi = zeta_sr * (1.0 + phi2);
  c.dist = std::pow(config.d_sr, config.pathloss);
  const double phi_t2 = config.hi_primary * config.hi_primary;
  c.d_int = c.dist * (1.0 + phi_t2) / std::pow(config.d_tr, config.pathloss);
  c.noise = config.noise_r;
  return c;
}

HopCoefficients hop2_coefficients(const SystemConfig& config, int receiver,
                                  int layer, double zeta_b) {
  check_user_index(config, receiver, "hop2_coefficients");
  if (layer < 1 || layer > receiver)
    throw std::out_of_range("hop2_coefficients: layer must satisfy 1 <= layer <= receiver");
  const int b = receiver - 1;
  const int j = layer - 1;
  HopCoefficients c;
  c.pa = config.beta[j];
  // Every layer the relay superposes reaches the receiver, so the uncancelled
  // sum runs to B (not to the receiver index).
  for (int n = j + 1; n < config.num_users; ++n) c.omega += config.beta[n];
  for (int n = 0; n < j; ++n)
    c.omega_tilde += config.sic_residue[n] * config.beta[n];
  const double phi2 = config.hi_user[b] * config.hi_user[b];
  c.a_self = c.omega + c.omega_tilde + phi2;
  c.c_csi = zeta_b * (1.0 + phi2);
  c.dist = std::pow(config.d_rb[b], config.pathloss);
  const double phi_t2 = config.hi_primary * config.hi_primary;
  c.d_int = c.dist * (1.0 + phi_t2) / std::pow(config.d_tb[b], config.pathloss);
  c.noise = config.noise_users[b];
  return c;
}

HopCoefficients oma_hop1_coefficients(const SystemConfig& config,
                                      double zeta_sr) {
  HopCoefficients c;
  c.pa = 1.0;
  const double phi2 = config.hi_source * config.hi_source;
  c.a_self = phi2;
  c.c_csi = zeta_sr * (1.0 + phi2);
  c.dist = std::pow(config.d_sr, config.pathloss);
  const double phi_t2 = config.hi_primary * config.hi_primary;
  c.d_int = c.dist * (1.0 + phi_t2) / std::pow(config.d_tr, config.pathloss);
  c.noise = config.noise_r;
  return c;
}

HopCoefficients oma_hop2_coefficients(const SystemConfig& config, int user,
                                      double zeta_b) {
  check_user_index(config, user, "oma_hop2_coefficients");
  const int b = user - 1;
  HopCoefficients c;
  c.pa = 1.0;
  const double phi2 = config.hi_user[b] * config.hi_user[b];
  c.a_self = phi2;
  c.c_csi = zeta_b * (1.0 + phi2);
  c.dist = std::pow(config.d_rb[b], config.pathloss);
  const double phi_t2 = config.hi_primary * config.hi_primary;
  c.d_int = c.dist * (1.0 + phi_t2) / std::pow(config.d_tb[b], config.pathloss);
  c.noise = config.noise_users[b];
  return c;
}

double sidnr_hop1(const HopCoefficients& c, double p_s, double p_t, double x,
                  double z) {
  return evaluate_sidnr(c, p_s, p_t, x, z);
}

double sidnr_hop2(const HopCoefficients& c, double p_r, double p_t, double q,
                  double w) {
  return evaluate_sidnr(c, p_r, p_t, q, w);
}

double sidnr_ceiling(const HopCoefficients& c) {
  if (c.a_self <= 0.0) return std::numeric_limits<double>::infinity();
  return c.pa / c.a_self;
}

double achievable_rate(double g1, double g2) {
  return 0.5 * std::log2(1.0 + std::min(g1, g2));
}

double oma_threshold(int num_users, double rate_threshold) {
  return std::exp2(2.0 * num_users * rate_threshold) - 1.0;
}

OmaEvaluation oma_sidnr_and_threshold(const SystemConfig& config, int user,
                                      const ChannelRealization& real,
                                      double p_s, double p_r) {
  check_user_index(config, user, "oma_sidnr_and_threshold");
  OmaEvaluation eval;
  const HopCoefficients h1 = oma_hop1_coefficients(config, real.zeta);
  const HopCoefficients h2 = oma_hop2_coefficients(config, user, real.zeta);
  eval.sidnr_hop1 = sidnr_hop1(h1, p_s, config.p_t, real.x, real.z);
  eval.sidnr_hop2 =
      sidnr_hop2(h2, p_r, config.p_t, real.q[user - 1], real.w[user - 1]);
  eval.threshold =
      oma_threshold(config.num_users, config.rate_thresholds[user - 1]);
  return eval;
}

}  // namespace crnoma
