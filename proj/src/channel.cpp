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

#include "crnoma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace crnoma {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(RngStream stream) {
  // Mix seed and stream id through splitmix64 so neighbouring stream ids
  // still yield decorrelated xoshiro states.
  std::uint64_t s = stream.seed ^ (stream.stream_id * 0x9e3779b97f4a7c15ULL) ^
                    0xd1b54a32d192ed03ULL;
  state_[0] = splitmix64(s);
  state_[1] = splitmix64(s);
  state_[2] = splitmix64(s);
  state_[3] = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double sample_power_gain(double mean, Rng& rng) {
  if (!(mean > 0.0))
    throw std::domain_error("sample_power_gain: mean must be > 0");
  // Inverse-CDF draw; u < 1 keeps log1p finite and the result nonnegative.
  const double u = rng.uniform01();
  return -mean * std::log1p(-u);
}

ChannelRealization draw_realization(const SystemConfig& config, double rho,
                                    RngStream stream) {
  const int b = config.num_users;
  ChannelRealization real;
  real.zeta = effective_error_variance(config.csi_theta, config.csi_kappa, rho);
  double est_mean = 1.0 - real.zeta;
  if (est_mean < kEstimatedGainFloor) {
    est_mean = kEstimatedGainFloor;
    real.csi_clamped = true;
  }

  // Fixed draw order is part of the reproducibility contract.
  Rng rng(stream);
  real.x = sample_power_gain(est_mean, rng);
  real.y = sample_power_gain(1.0, rng);
  real.z = sample_power_gain(1.0, rng);
  real.v = sample_power_gain(1.0, rng);
  real.q.resize(b);
  real.w.resize(b);
  for (int i = 0; i < b; ++i) {
    real.q[i] = sample_power_gain(est_mean, rng);
    real.w[i] = sample_power_gain(1.0, rng);
  }
  return real;
}

double secondary_transmit_power(double pbar, double i_itc, double gain_to_d,
                                double d_jd, double tau) {
  if (gain_to_d <= 0.0) return pbar;
  const double cap = i_itc * std::pow(d_jd, tau) / gain_to_d;
  return std::min(pbar, cap);
}

}  // namespace crnoma
