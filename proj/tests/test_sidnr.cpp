#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "crnoma/channel.hpp"
#include "crnoma/config.hpp"
#include "crnoma/sidnr.hpp"

using namespace crnoma;

namespace {

SystemConfig reference() { return *preset_config("base"); }

SystemConfig with_residue(double eps) {
  SystemConfig c = reference();
  c.sic_residue = {eps};
  return c;
}

// Independently coded ideal two-user NOMA SIDNR (no HI, CSI error, residue,
// or primary interference): alpha_j P x / (Omega_j P x + d^tau sigma^2).
double ideal_reference_hop1(const SystemConfig& c, int user, double p,
                            double x) {
  double omega = 0.0;
  for (int n = user; n < c.num_users; ++n) omega += c.alpha[n];
  const double dtau = std::pow(c.d_sr, c.pathloss);
  return c.alpha[user - 1] * p * x / (omega * p * x + dtau * c.noise_r);
}

}  // namespace

TEST_CASE("hop-1 coefficients, reference scenario") {
  const SystemConfig cfg = reference();
  const auto c1 = hop1_coefficients(cfg, 1, 0.0);
  CHECK(c1.omega == doctest::Approx(0.2));
  CHECK(c1.omega_tilde == 0.0);
  CHECK(c1.a_self == doctest::Approx(0.2));
  CHECK(c1.pa == doctest::Approx(0.8));
  CHECK(c1.c_csi == 0.0);
  // tau = 3, d_sr = 1, d_tr = 3, ideal primary hardware: 1/27.
  CHECK(c1.d_int == doctest::Approx(1.0 / 27.0));

  const auto c2 = hop1_coefficients(with_residue(0.03), 2, 0.0);
  CHECK(c2.omega == 0.0);
  CHECK(c2.omega_tilde == doctest::Approx(0.024));  // 0.03 * 0.8
  CHECK(c2.a_self == doctest::Approx(0.024));

  CHECK_THROWS_AS(hop1_coefficients(cfg, 0, 0.0), std::out_of_range);
  CHECK_THROWS_AS(hop1_coefficients(cfg, 3, 0.0), std::out_of_range);
}

TEST_CASE("hop-2 coefficients see every weaker layer") {
  const SystemConfig cfg = reference();
  // Receiver 1 decoding its own layer still hears layer 2.
  const auto c11 = hop2_coefficients(cfg, 1, 1, 0.0);
  CHECK(c11.omega == doctest::Approx(0.2));
  CHECK(c11.a_self == doctest::Approx(0.2));
  // Receiver 2 decoding layer 1: same single weaker layer.
  const auto c21 = hop2_coefficients(cfg, 2, 1, 0.0);
  CHECK(c21.omega == doctest::Approx(0.2));
  CHECK(c21.pa == doctest::Approx(0.8));
  // Receiver 2 decoding its own layer with residue 0.005.
  const auto c22 = hop2_coefficients(with_residue(0.005), 2, 2, 0.0);
  CHECK(c22.omega == 0.0);
  CHECK(c22.a_self == doctest::Approx(0.004));  // 0.005 * 0.8

  CHECK_THROWS_AS(hop2_coefficients(cfg, 1, 2, 0.0), std::out_of_range);
}

TEST_CASE("interference-limited ceiling") {
  SystemConfig cfg = reference();
  cfg.noise_r = 0.0;
  cfg.noise_users = {0.0, 0.0};
  const auto h1 = hop1_coefficients(cfg, 1, 0.0);
  CHECK(sidnr_hop1(h1, 100.0, 0.0, 1.7, 0.3) == doctest::Approx(4.0));
  CHECK(sidnr_ceiling(h1) == doctest::Approx(4.0));

  const auto h2 = hop2_coefficients(cfg, 2, 1, 0.0);
  CHECK(sidnr_hop2(h2, 100.0, 0.0, 0.9, 0.0) == doctest::Approx(4.0));

  // User B with residue only: ceiling beta_B / (eps * beta_1).
  SystemConfig res = cfg;
  res.sic_residue = {0.03};
  const auto hb = hop2_coefficients(res, 2, 2, 0.0);
  CHECK(sidnr_hop2(hb, 100.0, 0.0, 2.2, 0.0) ==
        doctest::Approx(0.2 / 0.024));
}

TEST_CASE("zero desired gain yields zero SIDNR") {
  const SystemConfig cfg = reference();
  const auto h1 = hop1_coefficients(cfg, 1, 0.0);
  CHECK(sidnr_hop1(h1, 100.0, 10.0, 0.0, 1.0) == 0.0);
  const auto h2 = hop2_coefficients(cfg, 2, 2, 0.0);
  CHECK(sidnr_hop2(h2, 100.0, 10.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("hand-evaluated hop-1 value") {
  // Reference scenario, user 1, P_S = 100, x = z = 1, P_T = 10, sigma^2 = 1:
  // 80 / (20 + 10/27 + 1) = 2160/577.
  const SystemConfig cfg = reference();
  const auto h1 = hop1_coefficients(cfg, 1, 0.0);
  CHECK(sidnr_hop1(h1, 100.0, 10.0, 1.0, 1.0) ==
        doctest::Approx(3.7435008665511265).epsilon(1e-14));
}

TEST_CASE("SIDNR stays strictly below the ceiling") {
  SystemConfig cfg = with_residue(0.01);
  cfg.hi_source = 0.05;
  cfg.hi_user = {0.05, 0.05};
  Rng rng({314, 0});
  const auto h1a = hop1_coefficients(cfg, 1, 0.001);
  const auto h1b = hop1_coefficients(cfg, 2, 0.001);
  const auto h2a = hop2_coefficients(cfg, 1, 1, 0.001);
  const auto h2b = hop2_coefficients(cfg, 2, 2, 0.001);
  for (int i = 0; i < 100'000; ++i) {
    const double g = sample_power_gain(1.0, rng);
    const double gi = sample_power_gain(1.0, rng);
    for (const auto& h : {h1a, h1b, h2a, h2b}) {
      const double v = sidnr_hop1(h, 100.0, 10.0, g, gi);
      CHECK(v < sidnr_ceiling(h));
    }
  }
}

TEST_CASE("monotonicity in gains and impairments") {
  const SystemConfig cfg = reference();
  const auto h = hop1_coefficients(cfg, 1, 0.0);
  double prev = -1.0;
  for (double x = 0.0; x < 10.0; x += 0.25) {
    const double v = sidnr_hop1(h, 100.0, 10.0, x, 1.0);
    CHECK(v >= prev);
    prev = v;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double z = 0.0; z < 10.0; z += 0.25) {
    const double v = sidnr_hop1(h, 100.0, 10.0, 1.0, z);
    CHECK(v <= prev);
    prev = v;
  }
  // Increasing each impairment never helps.
  prev = std::numeric_limits<double>::infinity();
  for (double phi = 0.0; phi <= 0.5; phi += 0.05) {
    SystemConfig c = cfg;
    c.hi_source = phi;
    const double v =
        sidnr_hop1(hop1_coefficients(c, 1, 0.0), 100.0, 10.0, 1.0, 1.0);
    CHECK(v <= prev);
    prev = v;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double zeta = 0.0; zeta <= 0.3; zeta += 0.03) {
    const double v =
        sidnr_hop1(hop1_coefficients(cfg, 1, zeta), 100.0, 10.0, 1.0, 1.0);
    CHECK(v <= prev);
    prev = v;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double eps = 0.0; eps <= 1.0; eps += 0.1) {
    const double v = sidnr_hop1(hop1_coefficients(with_residue(eps), 2, 0.0),
                                100.0, 10.0, 1.0, 1.0);
    CHECK(v <= prev);
    prev = v;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double pt = 0.0; pt <= 100.0; pt += 10.0) {
    const double v = sidnr_hop1(h, 100.0, pt, 1.0, 1.0);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("ideal reduction matches an independently coded formula") {
  const SystemConfig cfg = reference();
  Rng rng({2718, 0});
  for (int u = 1; u <= 2; ++u) {
    const auto h = hop1_coefficients(cfg, u, 0.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = sample_power_gain(1.0, rng);
      const double got = sidnr_hop1(h, 100.0, 0.0, x, 0.7);
      const double want = ideal_reference_hop1(cfg, u, 100.0, x);
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("absent SIC leaves the full residual interference") {
  const auto h = hop1_coefficients(with_residue(1.0), 2, 0.0);
  CHECK(h.omega_tilde == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(h.a_self == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("achievable rate") {
  CHECK(achievable_rate(3.0, 7.0) == doctest::Approx(1.0));
  CHECK(achievable_rate(0.0, 123.0) == 0.0);
  CHECK(achievable_rate(7.0, 7.0) == doctest::Approx(1.5));
}

TEST_CASE("baseline thresholds and limits") {
  CHECK(oma_threshold(2, 1.0) == doctest::Approx(15.0));
  CHECK(oma_threshold(2, 1.5) == doctest::Approx(63.0));

  SystemConfig cfg = reference();
  cfg.mode = AccessMode::kOma;
  cfg.noise_r = 0.0;
  cfg.noise_users = {0.0, 0.0};
  cfg.p_t = 0.0;
  ChannelRealization real;
  real.x = 1.3;
  real.z = 0.0;
  real.q = {0.9, 1.1};
  real.w = {0.0, 0.0};
  const auto eval = oma_sidnr_and_threshold(cfg, 1, real, 100.0, 100.0);
  // No inter-user term and ideal hardware: nothing bounds the SIDNR.
  CHECK(std::isinf(eval.sidnr_hop1));
  CHECK(std::isinf(eval.sidnr_hop2));
  CHECK(eval.threshold == doctest::Approx(15.0));
}
