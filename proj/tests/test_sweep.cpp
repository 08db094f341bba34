#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crnoma/config.hpp"
#include "crnoma/sweep.hpp"

using namespace crnoma;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.base = *preset_config("base");
  spec.axis = "transmit_snr_db";
  spec.values = {10.0, 20.0, 30.0};
  spec.mode = EvalMode::kBoth;
  spec.trials = 20'000;
  spec.seed = 5;
  return spec;
}

}  // namespace

TEST_CASE("axis names") {
  CHECK(is_valid_axis("transmit_snr_db"));
  CHECK(is_valid_axis("epsilon"));
  CHECK_FALSE(is_valid_axis("bogus"));
}

TEST_CASE("spec validation") {
  SweepSpec spec = small_spec();
  CHECK(validate_sweep(spec).ok());

  SweepSpec empty = small_spec();
  empty.values.clear();
  CHECK_FALSE(validate_sweep(empty).ok());

  SweepSpec nan_axis = small_spec();
  nan_axis.values = {std::nan("")};
  CHECK_FALSE(validate_sweep(nan_axis).ok());

  SweepSpec bad_axis = small_spec();
  bad_axis.axis = "nope";
  CHECK_FALSE(validate_sweep(bad_axis).ok());

  SweepSpec few_trials = small_spec();
  few_trials.trials = 10;
  CHECK_FALSE(validate_sweep(few_trials).ok());
  few_trials.mode = EvalMode::kAnalytic;  // no MC, so the floor is lifted
  CHECK(validate_sweep(few_trials).ok());

  CHECK_THROWS_AS(run_sweep(empty), std::invalid_argument);
}

TEST_CASE("axis application") {
  const SystemConfig base = *preset_config("base");
  {
    const auto [cfg, rho] = apply_axis(base, "transmit_snr_db", 25.0);
    CHECK(rho == doctest::Approx(316.22776601683796));
    CHECK(cfg.pbar_s == doctest::Approx(rho));
  }
  {
    const auto [cfg, rho] = apply_axis(base, "p_t_db", 25.0);
    CHECK(cfg.p_t == doctest::Approx(316.22776601683796));
    CHECK(rho == doctest::Approx(reference_snr(base)));
  }
  {
    const auto [cfg, rho] = apply_axis(base, "i_itc_db", 20.0);
    CHECK(cfg.i_itc == doctest::Approx(100.0));
  }
  {
    const auto [cfg, rho] = apply_axis(base, "phi", 0.15);
    CHECK(cfg.hi_source == 0.15);
    CHECK(cfg.hi_primary == 0.15);
    CHECK(cfg.hi_user == std::vector<double>{0.15, 0.15});
  }
  {
    const auto [cfg, rho] = apply_axis(base, "epsilon", 0.01);
    CHECK(cfg.sic_residue == std::vector<double>{0.01});
  }
  {
    const auto [cfg, rho] = apply_axis(base, "theta", 0.1);
    CHECK(cfg.csi_theta == 0.1);
  }
  {
    const auto [cfg, rho] = apply_axis(base, "kappa", 1.5);
    CHECK(cfg.csi_kappa == 1.5);
  }
}

TEST_CASE("row layout and analytic/MC agreement") {
  const ResultTable table = run_sweep(small_spec(), 2);
  // 3 values x 2 users x 2 modes.
  REQUIRE(table.rows.size() == 12);
  CHECK(table.axis_name == "transmit_snr_db");
  for (std::size_t i = 0; i + 3 < table.rows.size(); i += 4) {
    CHECK(table.rows[i].mode == "analytic");
    CHECK(table.rows[i + 2].mode == "mc");
    CHECK(table.rows[i].user == "U1");
    CHECK(table.rows[i + 1].user == "U2");
  }
  // Analytic and MC rows of the same (value, user) agree within the CI.
  for (std::size_t i = 0; i + 3 < table.rows.size(); i += 4) {
    for (int u = 0; u < 2; ++u) {
      const auto& analytic = table.rows[i + u];
      const auto& mc = table.rows[i + 2 + u];
      CHECK(std::abs(analytic.op - mc.op) <= mc.ci + 0.01);
    }
  }
}

TEST_CASE("csv round-trips and is byte-stable across reruns and workers") {
  const SweepSpec spec = small_spec();
  const std::string csv1 = csv_string(run_sweep(spec, 1));
  const std::string csv2 = csv_string(run_sweep(spec, 2));
  const std::string csv3 = csv_string(run_sweep(spec, 7));
  CHECK(csv1 == csv2);
  CHECK(csv1 == csv3);

  CHECK(csv1.rfind("axis,user,mode,op,ci,flags\n", 0) == 0);
  const ResultTable parsed = parse_csv(csv1);
  CHECK(csv_string(ResultTable{spec.axis, parsed.rows}) ==
        csv_string(ResultTable{spec.axis, run_sweep(spec, 2).rows}));
}

TEST_CASE("single-row table yields a two-line csv") {
  SweepSpec spec = small_spec();
  spec.values = {20.0};
  spec.mode = EvalMode::kAnalytic;
  SystemConfig one_user_focus = spec.base;
  spec.base = one_user_focus;
  ResultTable table = run_sweep(spec, 1);
  table.rows.resize(1);
  const std::string csv = csv_string(table);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("boundary rows are flagged and pinned to one") {
  SweepSpec spec = small_spec();
  spec.axis = "epsilon";
  spec.values = {0.0, 0.05};  // 0.05 exceeds the tolerable residue
  spec.mode = EvalMode::kAnalytic;
  const ResultTable table = run_sweep(spec, 1);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[1].flags == "-");
  CHECK(table.rows[3].user == "U2");
  CHECK(table.rows[3].op == 1.0);
  CHECK(table.rows[3].flags.find("boundary") != std::string::npos);
}

TEST_CASE("emit_csv writes files and surfaces io errors with path context") {
  const auto dir = std::filesystem::temp_directory_path() / "crnoma_sweep_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.csv").string();
  SweepSpec spec = small_spec();
  spec.mode = EvalMode::kAnalytic;
  const ResultTable table = run_sweep(spec, 1);
  emit_csv(table, path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == csv_string(table));

  try {
    emit_csv(table, "/nonexistent-dir/out.csv");
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(emit_csv(ResultTable{}, path), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("plot script contains one series per user/mode") {
  SweepSpec spec = small_spec();
  spec.mode = EvalMode::kBoth;
  const std::string script = plot_script_string(run_sweep(spec, 2));
  CHECK(script.find("set logscale y") != std::string::npos);
  CHECK(script.find("U1 analytic") != std::string::npos);
  CHECK(script.find("U2 analytic") != std::string::npos);
  CHECK(script.find("U1 mc") != std::string::npos);
  CHECK(script.find("U2 mc") != std::string::npos);
}

TEST_CASE("series labels reach the user column") {
  SweepSpec spec = small_spec();
  spec.mode = EvalMode::kAnalytic;
  spec.series = "eps0.03";
  const ResultTable table = run_sweep(spec, 1);
  CHECK(table.rows[0].user == "U1:eps0.03");
  CHECK(table.rows[1].user == "U2:eps0.03");
}

TEST_CASE("figure bundles expand to labelled multi-series sweeps") {
  for (const auto& name : sweep_preset_names()) {
    const auto specs = sweep_preset(name, EvalMode::kAnalytic, 10'000, 1);
    CHECK(!specs.empty());
    for (const auto& s : specs) {
      CHECK(validate_sweep(s).ok());
      CHECK(!s.series.empty());
    }
  }
  // The imperfection bundle carries the documented variants.
  const auto fig3 = sweep_preset("fig3", EvalMode::kAnalytic, 10'000, 1);
  REQUIRE(fig3.size() == 5);
  CHECK(fig3[0].series == "ideal");
  CHECK(fig3[1].series == "eps0.005");
  CHECK(fig3[2].series == "eps0.03");
  CHECK(fig3[3].series == "phi0.1");
  CHECK(fig3[4].series == "phi0.15");
  CHECK_THROWS_AS(sweep_preset("nope", EvalMode::kAnalytic, 1, 1),
                  std::invalid_argument);
}
