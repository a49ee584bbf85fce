#include "rnav/config.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "rnav/errors.hpp"

namespace rnav {
namespace {

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const RunConfig cfg = parse_config_text("");
  EXPECT_EQ(cfg.scenario, "eight");
  EXPECT_DOUBLE_EQ(cfg.dt, 1e-3);
  EXPECT_DOUBLE_EQ(cfg.T, 20.0);
  EXPECT_EQ(cfg.out_dir, "out");
  EXPECT_EQ(cfg.noise.seed, 1u);
  EXPECT_DOUBLE_EQ(cfg.riccati_q, 30.0);
  EXPECT_FALSE(cfg.attitude_rho2.has_value());
}

TEST(ParseConfig, CommentsAndBlankLines) {
  const RunConfig cfg = parse_config_text(
      "# a comment\n"
      "\n"
      "dt = 2e-3   # trailing comment\n"
      "  T = 4\n");
  EXPECT_DOUBLE_EQ(cfg.dt, 2e-3);
  EXPECT_DOUBLE_EQ(cfg.T, 4.0);
}

TEST(ParseConfig, FullKeyCoverage) {
  const RunConfig cfg = parse_config_text(
      "scenario = free_fall\n"
      "dt = 1e-2\n"
      "T = 5\n"
      "seed = 77\n"
      "out = /tmp/some_dir\n"
      "world.gravity = 0 0 9.8\n"
      "world.mag_dir = 1 0 0\n"
      "world.anchor = 0.5 0 0\n"
      "noise.sigma_gyro = 0.02\n"
      "noise.sigma_acc = 0.04\n"
      "noise.sigma_mag = 0.2\n"
      "noise.sigma_range = 0.3\n"
      "riccati.p0 = 5\n"
      "riccati.q = 12\n"
      "riccati.v = 0.5\n"
      "riccati.x0 = 1 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "attitude.k1 = 2\n"
      "attitude.rho1 = 0.9\n"
      "attitude.rho2 = 0.011\n"
      "attitude.rhat0 = 0 1.5707963 0\n"
      "audit.delta = 1\n"
      "audit.stride = 0.5\n"
      "audit.threshold = 1e-7\n"
      "free_fall.p0 = 2 0 1\n"
      "free_fall.v0 = 0 0.1 0\n");
  EXPECT_EQ(cfg.scenario, "free_fall");
  EXPECT_EQ(cfg.noise.seed, 77u);
  EXPECT_EQ(cfg.out_dir, "/tmp/some_dir");
  EXPECT_DOUBLE_EQ(cfg.world.gravity_i.z(), 9.8);
  EXPECT_DOUBLE_EQ(cfg.world.anchor_i.x(), 0.5);
  EXPECT_DOUBLE_EQ(cfg.noise.sigma_omega, 0.02);
  EXPECT_DOUBLE_EQ(cfg.noise.sigma_uwb, 0.3);
  EXPECT_DOUBLE_EQ(cfg.riccati_p0, 5.0);
  EXPECT_DOUBLE_EQ(cfg.riccati_x0(0), 1.0);
  ASSERT_TRUE(cfg.attitude_rho2.has_value());
  EXPECT_DOUBLE_EQ(*cfg.attitude_rho2, 0.011);
  EXPECT_NEAR(cfg.attitude_rhat0.y(), 1.5707963, 1e-12);
  EXPECT_DOUBLE_EQ(cfg.audit_stride, 0.5);
  EXPECT_DOUBLE_EQ(cfg.free_fall_p0.z(), 1.0);
  EXPECT_DOUBLE_EQ(cfg.free_fall_v0.y(), 0.1);
}

TEST(ParseConfig, CustomTrajectoryKeys) {
  const RunConfig cfg = parse_config_text(
      "scenario = custom\n"
      "traj.pos.x.poly = 1 2 3\n"
      "traj.pos.y.sin = 0.5 8 0.1\n"
      "traj.omega.z.sin = 1 2 0  0.5 4 0.25\n"
      "traj.r0 = 0 0 0.7853981633974483\n"
      "traj.horizon = 30\n");
  EXPECT_EQ(cfg.scenario, "custom");
  EXPECT_DOUBLE_EQ(cfg.custom.pos[0].c0, 1.0);
  EXPECT_DOUBLE_EQ(cfg.custom.pos[0].c1, 2.0);
  EXPECT_DOUBLE_EQ(cfg.custom.pos[0].c2, 3.0);
  ASSERT_EQ(cfg.custom.pos[1].terms.size(), 1u);
  EXPECT_DOUBLE_EQ(cfg.custom.pos[1].terms[0].freq, 8.0);
  ASSERT_EQ(cfg.custom.omega[2].terms.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.custom.omega[2].terms[1].phase, 0.25);
  EXPECT_DOUBLE_EQ(cfg.custom.horizon, 30.0);
  EXPECT_NEAR(rotation_angle(cfg.custom.r0), 0.7853981633974483, 1e-12);
}

TEST(ParseConfig, SweepKeys) {
  const RunConfig cfg = parse_config_text(
      "sweep.parameter = riccati.q\n"
      "sweep.values = 1 3 10 30\n");
  EXPECT_EQ(cfg.sweep_parameter, "riccati.q");
  ASSERT_EQ(cfg.sweep_values.size(), 4u);
  EXPECT_DOUBLE_EQ(cfg.sweep_values[3], 30.0);
}

TEST(ParseConfig, RejectsMalformedInput) {
  EXPECT_THROW(parse_config_text("dt\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("no_such_key = 1\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("dt = 1e-3\ndt = 2e-3\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("dt = fast\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("dt = 1e-3 2e-3\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("world.gravity = 0 9.8\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("riccati.x0 = 1 2 3\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("traj.pos.x.sin = 1 2\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("traj.pos.w.poly = 1\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("seed = -4\n"), ConfigParse);
}

TEST(ParseConfig, RejectsInvariantViolations) {
  EXPECT_THROW(parse_config_text("dt = 0\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("dt = 5\nT = 1\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("scenario = circle\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("noise.sigma_acc = -0.1\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("riccati.p0 = 0\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("riccati.q = -1\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("attitude.k1 = 0\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("audit.delta = 0\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("audit.delta = 30\n"), ConfigParse);
  EXPECT_THROW(parse_config_text("audit.stride = -1\n"), ConfigParse);
}

TEST(ParseConfigFile, ReadsAndFailsCleanly) {
  const std::string path = ::testing::TempDir() + "rnav_config_test.cfg";
  {
    std::ofstream out(path);
    out << "dt = 4e-3\nT = 2\n";
  }
  const RunConfig cfg = parse_config_file(path);
  EXPECT_DOUBLE_EQ(cfg.dt, 4e-3);
  std::remove(path.c_str());

  EXPECT_THROW(parse_config_file("/nonexistent/rnav.cfg"), IoFailure);
}

TEST(SetNumericKey, SweepableKeysRoundTrip) {
  RunConfig cfg;
  set_numeric_key(cfg, "riccati.q", 17.0);
  EXPECT_DOUBLE_EQ(cfg.riccati_q, 17.0);
  set_numeric_key(cfg, "attitude.k1", 3.0);
  EXPECT_DOUBLE_EQ(cfg.attitude_k1, 3.0);
  set_numeric_key(cfg, "noise.sigma_range", 0.25);
  EXPECT_DOUBLE_EQ(cfg.noise.sigma_uwb, 0.25);
  set_numeric_key(cfg, "dt", 2e-3);
  EXPECT_DOUBLE_EQ(cfg.dt, 2e-3);
}

TEST(SetNumericKey, RejectsNonNumericTargetsAndBadValues) {
  RunConfig cfg;
  EXPECT_THROW(set_numeric_key(cfg, "scenario", 1.0), ConfigParse);
  EXPECT_THROW(set_numeric_key(cfg, "out", 1.0), ConfigParse);
  EXPECT_THROW(set_numeric_key(cfg, "world.gravity", 1.0), ConfigParse);
  EXPECT_THROW(set_numeric_key(cfg, "riccati.x0", 1.0), ConfigParse);
  EXPECT_THROW(set_numeric_key(cfg, "sweep.values", 1.0), ConfigParse);
  EXPECT_THROW(set_numeric_key(cfg, "no_such_key", 1.0), ConfigParse);
  // The assignment itself must keep the config valid.
  EXPECT_THROW(set_numeric_key(cfg, "dt", -1.0), ConfigParse);
  EXPECT_THROW(set_numeric_key(cfg, "riccati.q", -5.0), ConfigParse);
}

}  // namespace
}  // namespace rnav
