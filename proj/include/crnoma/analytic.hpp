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

#include "crnoma/config.hpp"
#include "crnoma/sidnr.hpp"

namespace crnoma {

// Closed-form SIDNR CDF machinery.
//
// Every hop CDF in the model is an instance of one template event. With
// desired gain G ~ Exp(lambda_des), cap-link gain Y ~ Exp(lambda_cap) and
// interferer gain Z ~ Exp(lambda_int), the transmit power is
// P = min(pbar, cap / Y) and
//
//   F(psi) = Pr[G < Z*K_d + M_d + L, Y < Lam]          (cap slack,  "delta")
//          + Pr[G < Z*Y*K_u + Y*M_u + L, Y > Lam]      (cap binds, "upsilon")
//
// with K_c = interference*psi / (c * den), M_c = noise*psi / (c * den),
// L = c_csi*psi / den, den = pa - a_self*psi, c in {pbar, cap}, and
// Lam = cap / pbar. The upsilon branch integrates to an exponential-integral
// form with mu = lambda_int + lambda_des*Lam*K_u and
// xi = M_u/K_u + lambda_cap/(lambda_des*K_u).

/// Scalar inputs of one hop CDF evaluation.
struct BranchInputs {
  double pa = 0.0;            // PA factor of the decoded layer
  double a_self = 0.0;        // self-interference coefficient
  double c_csi = 0.0;         // CSI-error coefficient
  double interference = 0.0;  // d_int * P_T, multiplies the interferer gain
  double pbar = 0.0;          // transmit power budget of the hop
  double cap = 0.0;           // i_itc * d_jD^tau (may be +inf; 0 forces F = 1)
  double noise = 0.0;         // d_hop^tau * sigma^2
  double psi = 0.0;           // SNR threshold
  double lambda_des = 1.0;    // rate of the desired (estimated) gain
  double lambda_cap = 1.0;    // rate of the cap-link gain
  double lambda_int = 1.0;    // rate of the interferer gain
};

/// Derived constants of the two branches; exposed so each appendix-level term
/// is unit-testable on its own.
struct AnalyticCoefficients {
  double k_delta = 0.0, m_delta = 0.0;  // budget-branch constants
  double k_ups = 0.0, m_ups = 0.0;      // cap-branch constants
  double l_csi = 0.0;                   // CSI-error offset
  double lambda_big = 0.0;              // Lam = cap / pbar (may be +inf)
  double mu = 0.0, xi = 0.0;            // paired Ei arguments (cap branch)
  double lambda_des = 1.0, lambda_cap = 1.0, lambda_int = 1.0;
  double psi = 0.0;
  bool valid = false;                   // psi strictly below pa / a_self
  bool degenerate_cap = false;          // cap == 0: transmission impossible
};

AnalyticCoefficients branch_coefficients(const BranchInputs& in);

/// Cap-slack branch probability (0 when Lam == 0, full z-integral when
/// Lam == +inf). Requires coeffs.valid.
double delta_term(const AnalyticCoefficients& c);

/// Cap-bound branch probability (0 when Lam == +inf). Requires coeffs.valid.
double upsilon_term(const AnalyticCoefficients& c);

/// Total CDF value: delta + upsilon clamped to [0, 1]; exactly 1 when the
/// threshold is at/above the SIDNR ceiling or the cap is degenerate; exactly
/// 0 for psi <= 0.
double branch_cdf(const AnalyticCoefficients& c);

/// NOMA SNR threshold psi = 2^(2 * rate) - 1.
double threshold_psi(double rate_threshold);

/// Mode-aware per-user threshold (NOMA psi_j, or the 2B-slot baseline value).
double user_threshold(const SystemConfig& config, int user);

// Ready-made inputs for the four CDFs of the model (NOMA mode); `user`,
// `receiver`, `layer` are 1-based. The user-B forms fall out of the same
// builders via the residue-only self term.
BranchInputs hop1_inputs(const SystemConfig& config, int user, double rho,
                         double psi);
BranchInputs hop2_inputs(const SystemConfig& config, int receiver, int layer,
                         double rho, double psi);
BranchInputs oma_hop1_inputs(const SystemConfig& config, double rho, double psi);
BranchInputs oma_hop2_inputs(const SystemConfig& config, int user, double rho,
                             double psi);

/// CDF of the first-hop SIDNR when the relay decodes layer `user`.
double cdf_gamma_r_j(const SystemConfig& config, int user, double rho,
                     double psi);
/// CDF of the second-hop SIDNR when `receiver` decodes `layer`.
double cdf_gamma_b_j(const SystemConfig& config, int receiver, int layer,
                     double rho, double psi);
/// First-hop CDF of the weakest-power layer B (residue-limited form).
double cdf_gamma_r_b(const SystemConfig& config, double rho, double psi);
/// Second-hop CDF of user B decoding its own layer.
double cdf_gamma_b(const SystemConfig& config, double rho, double psi);

struct OutageBreakdown {
  double hop1_cdf = 0.0;
  double hop2_cdf = 0.0;
  double op = 0.0;
  bool hop1_boundary = false;  // threshold at/above the hop-1 ceiling
  bool hop2_boundary = false;
  bool csi_clamped = false;    // zeta >= 1 clamped to the variance floor
};

/// End-to-end outage F1 + F2 - F1*F2 at the user's own threshold,
/// mode-aware (NOMA or the orthogonal baseline).
OutageBreakdown outage_breakdown(const SystemConfig& config, int user,
                                 double rho);
double outage_probability(const SystemConfig& config, int user, double rho);

/// Largest SIC residue the two-user system tolerates before the weak user's
/// ceiling drops below its threshold: (alpha2 - phi^2) / (alpha1 * psi2),
/// floored at zero.
double max_tolerable_sic(double alpha1, double alpha2, double phi, double psi2);

}  // namespace crnoma
