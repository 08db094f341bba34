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

#include "crnoma/channel.hpp"
#include "crnoma/config.hpp"

namespace crnoma {

/// Coefficient set of one hop's SIDNR
///
///   gamma = pa * P * g / (a_self * P * g + c_csi * P
///                         + d_int * P_T * g_int + dist * noise)
///
/// where g is the estimated desired-link gain and g_int the total gain of the
/// primary interferer link. a_self = omega + omega_tilde + phi^2 always.
struct HopCoefficients {
  double pa = 0.0;           // PA factor of the decoded layer
  double a_self = 0.0;       // uncancelled layers + SIC residue + HI distortion
  double c_csi = 0.0;        // zeta * (1 + phi^2)
  double d_int = 0.0;        // d_hop^tau * (1 + phi_T^2) / d_Tlink^tau
  double omega = 0.0;        // sum of weaker-layer PA factors
  double omega_tilde = 0.0;  // sum of residue-weighted cancelled-layer PA factors
  double noise = 0.0;        // receiver noise variance
  double dist = 0.0;         // d_hop^tau
};

/// S->R hop, decoding layer `user` (1-based). For user == B the cancelled-layer
/// residue a_self = omega_tilde_B + phi^2 applies (omega is empty there).
HopCoefficients hop1_coefficients(const SystemConfig& config, int user,
                                  double zeta_sr);

/// R->U_receiver hop, decoding layer `layer` (1 <= layer <= receiver <= B).
/// The uncancelled sum runs over every weaker layer n = layer+1..B: the relay
/// superposes all B layers, so each of them is present at the receiver.
HopCoefficients hop2_coefficients(const SystemConfig& config, int receiver,
                                  int layer, double zeta_b);

// Orthogonal baseline: one user per slot pair at full power, so the
// inter-user terms vanish while HI/CSI/primary-interference terms remain.
HopCoefficients oma_hop1_coefficients(const SystemConfig& config, double zeta_sr);
HopCoefficients oma_hop2_coefficients(const SystemConfig& config, int user,
                                      double zeta_b);

double sidnr_hop1(const HopCoefficients& c, double p_s, double p_t, double x,
                  double z);
double sidnr_hop2(const HopCoefficients& c, double p_r, double p_t, double q,
                  double w);

/// Hard upper bound pa / a_self of the SIDNR (+inf when a_self == 0).
double sidnr_ceiling(const HopCoefficients& c);

/// Dual-hop decode-and-forward rate, 0.5 * log2(1 + min(g1, g2)).
double achievable_rate(double sidnr_hop1, double sidnr_hop2);

/// SNR threshold of the orthogonal baseline: the slot sharing over 2B slots
/// is folded into the exponent, 2^(2 * B * rate) - 1.
double oma_threshold(int num_users, double rate_threshold);

struct OmaEvaluation {
  double sidnr_hop1 = 0.0;
  double sidnr_hop2 = 0.0;
  double threshold = 0.0;
};

/// Baseline SIDNRs and threshold for `user` under one realization.
OmaEvaluation oma_sidnr_and_threshold(const SystemConfig& config, int user,
                                      const ChannelRealization& real,
                                      double p_s, double p_r);

}  // namespace crnoma
