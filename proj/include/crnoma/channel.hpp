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

#include <cstdint>
#include <vector>

#include "crnoma/config.hpp"

namespace crnoma {

/// Identifies one reproducible random substream. Equal (seed, stream_id)
/// produce identical draws no matter how trials are partitioned over workers.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// xoshiro256++ with per-stream state derived via splitmix64, so every trial
/// owns an independent generator that can be reconstructed in isolation.
class Rng {
 public:
  explicit Rng(RngStream stream);

  std::uint64_t next_u64();
  double uniform01();  // [0, 1), 53-bit resolution

 private:
  std::uint64_t state_[4];
};

/// Exponential power gain |h|^2 of a CN(0, mean) fading coefficient.
/// Throws std::domain_error for mean <= 0.
double sample_power_gain(double mean, Rng& rng);

/// Variance floor applied to estimated channels when zeta approaches 1.
inline constexpr double kEstimatedGainFloor = 1e-6;

/// One fading draw of every link the model touches. Desired links carry the
/// *estimated* channel (variance 1 - zeta); interference and power-cap links
/// carry the total channel (variance 1).
struct ChannelRealization {
  double x = 0.0;          // |h_SR|^2, estimated
  double y = 0.0;          // |h~_SD|^2, total (caps P_S)
  double z = 0.0;          // |h~_TR|^2, total (primary interference at R)
  double v = 0.0;          // |h~_RD|^2, total (caps P_R)
  std::vector<double> q;   // |h_Rb|^2 per user, estimated
  std::vector<double> w;   // |h~_Tb|^2 per user, total
  double zeta = 0.0;       // error variance used for the estimated links
  bool csi_clamped = false;  // zeta >= 1 was clamped to the variance floor
};

ChannelRealization draw_realization(const SystemConfig& config, double rho,
                                    RngStream stream);

/// Underlay power rule P_j = min(pbar, i_itc * d_jD^tau / gain_to_d).
/// gain_to_d == 0 yields pbar; i_itc may be +infinity.
double secondary_transmit_power(double pbar, double i_itc, double gain_to_d,
                                double d_jd, double tau);

}  // namespace crnoma
