#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "aoicov/config.hpp"
#include "aoicov/error.hpp"
#include "aoicov/units.hpp"

using namespace aoicov;

namespace {

// Expects parse_config to fail on `key` at `line`.
void expect_error(const std::string& text, const std::string& key, int line,
                  const std::string& fragment = "") {
  try {
    parse_config(text);
    FAIL("accepted: " << text);
  } catch (const ConfigError& e) {
    CHECK(e.key() == key);
    CHECK(e.line() == line);
    const std::string what = e.what();
    CHECK(what.find(key) != std::string::npos);
    if (!fragment.empty()) CHECK(what.find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("empty config gives reference defaults") {
  const ExperimentSpec s = parse_config("");
  CHECK(s.system.interferers.size() == 2);
  CHECK(s.system.interferers[0].density == 8.7e-5);
  CHECK(s.system.interferers[1].density == 8.7e-5);
  CHECK(s.system.interferers[0].power == 40.0);
  CHECK(s.system.interferers[1].power == 30.0);
  CHECK(s.system.link_distance == 20.0);
  CHECK(s.system.target_sinr == 1.0);
  CHECK(s.system.timing.retx_interval == 1.0);
  CHECK(s.system.timing.tx_duration == 1.0);
  CHECK(s.system.noise == 1e-5);
  CHECK(s.system.pathloss_exp == 3.5);
  CHECK(s.correlation.theta_th == 0.1);
  CHECK(s.correlation.eta == 0.6);
  CHECK(s.correlation.eps_target == 0.6);
  CHECK(s.sensing_energy == 1.0);
  CHECK(s.environment == Environment::General);
  CHECK_FALSE(s.v_th_override);
  CHECK(parse_config("# only a comment\n\n   \n").system.link_distance == 20.0);
}

TEST_CASE("all documented keys parse") {
  const ExperimentSpec s = parse_config(R"(
tx_power_dbm = 10
link_distance = 25
pathloss_exp = 4
noise = 1e-6
target_sinr = 2
interferer.1.density = 1e-4
interferer.1.power = 50
interferer.2.density = 0
interferer.3.density = 2e-5
interferer.3.power = 10
retx_interval = 2
tx_duration = 0.5
max_retx = 7
corr_u = 0.02
corr_v = 0.001
theta_th = 0.2
eta = 0.5
eps_target = 0.7
sensing_energy = 3
environment = interference_limited
v_th_override = 10
seed = 99
periods = 1234
  )");
  CHECK(s.system.tx_power == doctest::Approx(10.0));
  CHECK(s.system.link_distance == 25);
  CHECK(s.system.pathloss_exp == 4);
  CHECK(s.system.noise == 1e-6);
  CHECK(s.system.target_sinr == 2);
  REQUIRE(s.system.interferers.size() == 3);
  CHECK(s.system.interferers[0].density == 1e-4);
  CHECK(s.system.interferers[0].power == 50);
  CHECK(s.system.interferers[1].density == 0);
  CHECK(s.system.interferers[1].power == 30);
  CHECK(s.system.interferers[2].density == 2e-5);
  CHECK(s.system.timing.retx_interval == 2);
  CHECK(s.system.timing.tx_duration == 0.5);
  CHECK(s.system.timing.max_retx == 7);
  CHECK(s.correlation.u == 0.02);
  CHECK(s.correlation.v == 0.001);
  CHECK(s.correlation.theta_th == 0.2);
  CHECK(s.correlation.eta == 0.5);
  CHECK(s.correlation.eps_target == 0.7);
  CHECK(s.sensing_energy == 3);
  CHECK(s.environment == Environment::InterferenceLimited);
  CHECK(*s.v_th_override == 10);
  CHECK(s.sim.seed == 99);
  CHECK(s.sim.periods == 1234);
}

TEST_CASE("errors name the key and line") {
  expect_error("max_retx = 0\n", "max_retx", 1, "N >= 1");
  expect_error("\n\nbogus = 3\n", "bogus", 3, "unknown key");
  expect_error("link_distance = far\n", "link_distance", 1, "expected a number");
  expect_error("max_retx = 2.5\n", "max_retx", 1, "integer");
  expect_error("pathloss_exp = 2\n", "pathloss_exp", 1);
  expect_error("theta_th = 1\n", "theta_th", 1);
  expect_error("eta = 0\n", "eta", 1);
  expect_error("environment = space\n", "environment", 1);
  expect_error("noise = 1\nnoise = 2\n", "noise", 2, "duplicate");
  expect_error("tx_duration = 2\n", "tx_duration", 1, "T_o <= T_R");
  expect_error("interferer.4.density = 1e-5\ninterferer.4.power = 1\n", "interferer.4", 2,
               "contiguous");
  expect_error("interferer.3.density = 1e-5\n", "interferer.3", 1, "both");
  expect_error("periods = 0\n", "periods", 1);
  expect_error("seed = -1\n", "seed", 1);
  expect_error("sweep.min = 5\nsweep.max = 1\n", "sweep.max", 2, "min <= max");
  expect_error("sweep.step = 0\n", "sweep.step", 1);
  expect_error("experiment = plot\n", "experiment", 1);
  try {
    parse_config("novalue\n");
    FAIL("accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("experiment kinds and sweeps") {
  for (auto k : {ExperimentKind::AvgAoiSweep, ExperimentKind::ViolationSweep,
                 ExperimentKind::EnergySweep, ExperimentKind::OptimalPowerVsN,
                 ExperimentKind::Validate})
    CHECK(parse_experiment_kind(to_string(k)) == k);
  const ExperimentSpec s = parse_config(
      "sweep.min = -10\nsweep.max = 25\nsweep.step = 0.5\nexperiment = avg_aoi_sweep\n");
  const auto pts = s.effective_sweep().points();
  CHECK(pts.size() == 71);
  CHECK(pts.front() == -10.0);
  CHECK(pts.back() == 25.0);
  const ExperimentSpec n = parse_config("experiment = optimal_power_vs_n\nsweep.max = 12\n");
  CHECK(n.effective_sweep().points().size() == 8);
  CHECK(n.effective_sweep().points().front() == 5.0);
  CHECK(Sweep{1.0, 1.0, 0.3}.points() == std::vector<double>{1.0});
}

TEST_CASE("overlays") {
  const ExperimentSpec s = parse_config(
      "overlay.1.max_retx = 5\noverlay.1.retx_interval = 2\noverlay.2.link_distance = 25\n");
  REQUIRE(s.overlays.size() == 2);
  CHECK(s.system_for(s.overlays[0]).timing.max_retx == 5);
  CHECK(s.system_for(s.overlays[0]).timing.retx_interval == 2);
  CHECK(s.system_for(s.overlays[1]).link_distance == 25);
  CHECK(s.system_for(s.overlays[1]).timing.max_retx == s.system.timing.max_retx);
  CHECK(parse_config("").effective_overlays().size() == 1);
  expect_error("overlay.2.max_retx = 3\n", "overlay.2", 0, "contiguous");
  expect_error("overlay.1.colour = red\n", "overlay.1.colour", 1, "unknown key");
  expect_error("overlay.1.max_retx = 0\n", "overlay.1.max_retx", 1, "N >= 1");
}

TEST_CASE("shipped configs load") {
  const std::filesystem::path dir = std::filesystem::path(AOICOV_SOURCE_DIR) / "configs";
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()));
    ++count;
  }
  CHECK(count >= 6);
  const ExperimentSpec aoi_cfg = load_config(dir / "avg_aoi_vs_power.cfg");
  CHECK(aoi_cfg.effective_sweep().min == -10);
  CHECK(aoi_cfg.effective_sweep().max == 25);
  CHECK(aoi_cfg.overlays.size() == 4);
  CHECK_THROWS_AS(load_config(dir / "missing.cfg"), ConfigError);
}
