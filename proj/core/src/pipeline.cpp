#include "rnav/pipeline.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <string>

#include "rnav/augmented.hpp"
#include "rnav/errors.hpp"

namespace rnav {
namespace {

double resolved_rho2(const RunConfig& cfg) {
  if (cfg.attitude_rho2) return *cfg.attitude_rho2;
  const double gn2 = cfg.world.gravity_i.squaredNorm();
  return gn2 > 0.0 ? 1.0 / gn2 : 0.0;
}

RiccatiConfig riccati_config(const RunConfig& cfg) {
  RiccatiConfig rc;
  rc.p0 = cfg.riccati_p0 * Mat13::Identity();
  rc.q = cfg.riccati_q;
  rc.process_noise = cfg.riccati_v * Mat13::Identity();
  rc.dt = cfg.dt;
  rc.gravity_norm_sq = cfg.world.gravity_i.squaredNorm();
  return rc;
}

AttitudeConfig attitude_config(const RunConfig& cfg) {
  AttitudeConfig ac;
  ac.k1 = cfg.attitude_k1;
  ac.rho1 = cfg.attitude_rho1;
  ac.rho2 = resolved_rho2(cfg);
  ac.mag_dir_i = cfg.world.mag_dir_i;
  ac.gravity_i = cfg.world.gravity_i;
  ac.dt = cfg.dt;
  return ac;
}

double min_eigenvalue(const Mat13& sym) {
  Eigen::SelfAdjointEigenSolver<Mat13> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create output directory " + cfg.out_dir);
  return dir;
}

std::vector<std::pair<std::string, std::string>> summary_entries(
    const RunConfig& cfg, const RunResult& result) {
  const RunSummary& s = result.summary;
  const CascadeDiagnostics& d = result.diagnostics;
  auto num = [](double v) { return format_number(v); };
  return {
      {"scenario", cfg.scenario},
      {"dt", num(cfg.dt)},
      {"T", num(cfg.T)},
      {"seed", std::to_string(cfg.noise.seed)},
      {"final_p_error", num(s.final_p_error)},
      {"rms_p_error", num(s.rms_p_error)},
      {"final_v_error", num(s.final_v_error)},
      {"rms_v_error", num(s.rms_v_error)},
      {"final_g_error", num(s.final_g_error)},
      {"rms_g_error", num(s.rms_g_error)},
      {"final_attitude_error", num(s.final_attitude_error)},
      {"tail_rms_p_error", num(s.tail_rms_p_error)},
      {"tail_rms_attitude_error", num(s.tail_rms_attitude_error)},
      {"pe_margin_min", num(s.pe_margin_min)},
      {"full_gramian_min", num(s.full_gramian_min)},
      {"reduced_gramian_min", num(s.reduced_gramian_min)},
      {"max_rotation_invariant_error", num(d.max_rotation_invariant_error)},
      {"max_p_asymmetry", num(d.max_p_asymmetry)},
  };
}

}  // namespace

TrajectorySpec scenario_trajectory(const RunConfig& cfg) {
  if (cfg.scenario == "eight") return eight_trajectory();
  if (cfg.scenario == "free_fall")
    return free_fall_trajectory(cfg.free_fall_p0, cfg.free_fall_v0,
                                cfg.world.gravity_i);
  if (cfg.scenario == "custom") return cfg.custom;
  throw ConfigParse("unknown scenario '" + cfg.scenario + "'");
}

std::vector<RigidBodyTruth> simulate_truth(const RunConfig& cfg) {
  cfg.world.validate();
  return run_truth(scenario_trajectory(cfg), cfg.world, cfg.dt, cfg.T);
}

std::vector<SensorSample> simulate_sensors(
    const RunConfig& cfg, const std::vector<RigidBodyTruth>& truth) {
  std::vector<SensorSample> sensors;
  sensors.reserve(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k)
    sensors.push_back(sense(truth[k], cfg.world, cfg.noise, k));
  return sensors;
}

std::vector<std::pair<double, double>> audit_windows(const RunConfig& cfg) {
  std::vector<std::pair<double, double>> windows;
  for (int k = 0;; ++k) {
    const double t = k * cfg.audit_stride;
    if (t + cfg.audit_delta > cfg.T + 1e-9) break;
    windows.emplace_back(t, cfg.audit_delta);
  }
  if (windows.empty())
    throw ConfigParse("audit: no window fits inside the run");
  return windows;
}

RunResult observe_run(const RunConfig& cfg) {
  const auto t_begin = std::chrono::steady_clock::now();

  RunResult result;
  result.truth = simulate_truth(cfg);
  result.sensors = simulate_sensors(cfg, result.truth);

  RiccatiObserver riccati(riccati_config(cfg), cfg.riccati_x0);
  AttitudeFilter attitude(attitude_config(cfg), exp_so3(cfg.attitude_rhat0));

  const std::size_t n = result.truth.size();
  result.riccati_log.reserve(n);
  result.attitude_log.reserve(n);
  CascadeDiagnostics& diag = result.diagnostics;

  for (std::size_t k = 0; k < n; ++k) {
    const double t = result.truth[k].t;
    const SensorSample& meas = result.sensors[k];

    RiccatiLogRow rrow;
    rrow.t = t;
    rrow.x = riccati.state();
    rrow.trace_p = riccati.covariance().trace();
    rrow.min_eig_p = min_eigenvalue(riccati.covariance());
    rrow.innovation = riccati.innovation(meas.range);
    result.riccati_log.push_back(rrow);

    AttitudeLogRow arow;
    arow.t = t;
    arow.rhat = attitude.attitude().matrix();
    arow.attitude_error = attitude_error(result.truth[k].R,
                                         attitude.attitude());
    result.attitude_log.push_back(arow);

    diag.max_rotation_invariant_error =
        std::max({diag.max_rotation_invariant_error,
                  result.truth[k].R.invariant_error(),
                  attitude.attitude().invariant_error()});

    if (k + 1 == n) break;
    try {
      // The attitude update consumes this epoch's gravity estimate before
      // the navigation observer advances: the cascade is strictly one-way.
      attitude.step(meas.gyro, meas.mag, riccati.estimates().g_b);
      riccati.step(meas.gyro, meas.accel, meas.range);
    } catch (const PNotPositiveDefinite& e) {
      throw ObserverDiverged("observer diverged at step " +
                             std::to_string(k) + " (t=" + format_number(t) +
                             "): " + e.what());
    }
    diag.max_p_asymmetry =
        std::max(diag.max_p_asymmetry, riccati.last_asymmetry());
    ++diag.steps;
  }

  // Error summary against the body-frame truth.
  RunSummary& s = result.summary;
  double sum_p = 0.0, sum_v = 0.0, sum_g = 0.0;
  double tail_p = 0.0, tail_att = 0.0;
  const std::size_t tail_begin = (3 * (n - 1)) / 4;
  for (std::size_t k = 0; k < n; ++k) {
    const BodyState truth_b = body_state(result.truth[k], cfg.world);
    const Vec13& x = result.riccati_log[k].x;
    const double ep = (x.segment<3>(4) - truth_b.p_b).norm();
    const double ev = (x.segment<3>(7) - truth_b.v_b).norm();
    const double eg = (x.segment<3>(10) - truth_b.g_b).norm();
    sum_p += ep * ep;
    sum_v += ev * ev;
    sum_g += eg * eg;
    if (k >= tail_begin) {
      tail_p += ep * ep;
      const double ea = result.attitude_log[k].attitude_error;
      tail_att += ea * ea;
    }
    if (k + 1 == n) {
      s.final_p_error = ep;
      s.final_v_error = ev;
      s.final_g_error = eg;
      s.final_attitude_error = result.attitude_log[k].attitude_error;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  s.rms_p_error = std::sqrt(sum_p * inv_n);
  s.rms_v_error = std::sqrt(sum_v * inv_n);
  s.rms_g_error = std::sqrt(sum_g * inv_n);
  const double inv_tail = 1.0 / static_cast<double>(n - tail_begin);
  s.tail_rms_p_error = std::sqrt(tail_p * inv_tail);
  s.tail_rms_attitude_error = std::sqrt(tail_att * inv_tail);

  // Observability margins of the (noiseless) scenario.
  double pe_min = std::numeric_limits<double>::infinity();
  double full_min = pe_min, reduced_min = pe_min;
  for (const auto& [t, delta] : audit_windows(cfg)) {
    pe_min = std::min(
        pe_min,
        gramian(GramianLevel::pe_phi, t, delta, result.truth, cfg.dt).min_eig);
    full_min = std::min(full_min,
                        gramian(GramianLevel::full_augmented, t, delta,
                                result.truth, cfg.dt)
                            .min_eig);
    reduced_min = std::min(reduced_min,
                           gramian(GramianLevel::reduced_pair, t, delta,
                                   result.truth, cfg.dt)
                               .min_eig);
  }
  s.pe_margin_min = pe_min;
  s.full_gramian_min = full_min;
  s.reduced_gramian_min = reduced_min;

  s.wall_time_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t_begin)
                      .count();
  return result;
}

AuditResult audit_run(const RunConfig& cfg) {
  const std::vector<RigidBodyTruth> truth = simulate_truth(cfg);
  const auto windows = audit_windows(cfg);

  AuditResult audit;
  audit.cross = cross_check(truth, cfg.dt, windows, cfg.audit_threshold);

  double inf = std::numeric_limits<double>::infinity();
  audit.full_min = inf;
  audit.reduced_min = inf;
  audit.pe_min = inf;
  audit.restricted_min = inf;
  for (const WindowCheck& w : audit.cross.windows) {
    audit.full_min = std::min(audit.full_min, w.full_min);
    audit.reduced_min = std::min(audit.reduced_min, w.reduced_min);
    audit.pe_min = std::min(audit.pe_min, w.pe_min);
    audit.restricted_min = std::min(audit.restricted_min, w.restricted_min);
  }

  for (const auto& [t, delta] : windows)
    audit.factorization_max =
        std::max(audit.factorization_max,
                 factorization_residual(truth, cfg.dt, t, t + delta));

  // The recursion differentiates twice, and each pass falls back to a
  // one-sided stencil at the grid ends.  Those one-sided errors get divided
  // by dt again on the next pass, so the outermost two samples per side do
  // not reflect the scheme's accuracy; the agreement metric covers the
  // centered-stencil region only.
  constexpr std::size_t kEdge = 2;
  const auto rows = r_recursion(truth, cfg.dt);
  double scale = 0.0;
  for (const RRows& r : rows) scale = std::max(scale, r.closed_r4.norm());
  for (std::size_t k = kEdge; k + kEdge < rows.size(); ++k) {
    const RRows& r = rows[k];
    const double diff = (r.numeric[3] - r.closed_r4).norm();
    const double rel =
        scale > 0.0 ? diff / std::max(r.closed_r4.norm(), 1e-9 * scale)
                    : diff;
    audit.r4_max_rel_error = std::max(audit.r4_max_rel_error, rel);
  }

  const ESetBasis eset =
      e_set(shift9(), Eigen::MatrixXd::Identity(kBodyDim, kBodyDim));
  audit.eset_q = eset.q;
  audit.eset_dim = static_cast<int>(eset.union_basis.cols());

  audit.pass = audit.full_min > cfg.audit_threshold &&
               audit.reduced_min > cfg.audit_threshold &&
               audit.pe_min > cfg.audit_threshold;
  return audit;
}

std::vector<SweepRow> sweep_run(const RunConfig& cfg) {
  if (cfg.sweep_parameter.empty())
    throw ConfigParse("sweep: sweep.parameter is not set");
  if (cfg.sweep_values.empty())
    throw ConfigParse("sweep: sweep.values is empty");

  // Validate every grid point up front so bad keys fail before any run.
  std::vector<RunConfig> configs;
  for (double value : cfg.sweep_values) {
    RunConfig point = cfg;
    set_numeric_key(point, cfg.sweep_parameter, value);
    configs.push_back(std::move(point));
  }

  std::vector<std::future<RunResult>> futures;
  futures.reserve(configs.size());
  for (const RunConfig& point : configs)
    futures.push_back(std::async(std::launch::async,
                                 [&point] { return observe_run(point); }));

  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (std::size_t i = 0; i < futures.size(); ++i)
    rows.push_back({cfg.sweep_values[i], futures[i].get().summary});
  return rows;
}

std::size_t cmd_simulate(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const auto truth = simulate_truth(cfg);
  const auto sensors = simulate_sensors(cfg, truth);
  write_truth_sensors_csv((dir / "truth_sensors.csv").string(), truth,
                          sensors);
  return truth.size();
}

RunSummary cmd_observe(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const RunResult result = observe_run(cfg);
  write_truth_sensors_csv((dir / "truth_sensors.csv").string(), result.truth,
                          result.sensors);
  write_riccati_csv((dir / "riccati.csv").string(), result.riccati_log);
  write_attitude_csv((dir / "attitude.csv").string(), result.attitude_log);
  write_summary((dir / "summary.txt").string(),
                summary_entries(cfg, result));
  return result.summary;
}

AuditResult cmd_audit(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const AuditResult audit = audit_run(cfg);
  write_audit_csv((dir / "audit.csv").string(), audit.cross.windows);
  auto num = [](double v) { return format_number(v); };
  write_summary(
      (dir / "audit_summary.txt").string(),
      {
          {"scenario", cfg.scenario},
          {"windows", std::to_string(audit.cross.windows.size())},
          {"delta", num(cfg.audit_delta)},
          {"stride", num(cfg.audit_stride)},
          {"threshold", num(cfg.audit_threshold)},
          {"full_min", num(audit.full_min)},
          {"reduced_min", num(audit.reduced_min)},
          {"pe_min", num(audit.pe_min)},
          {"restricted_min", num(audit.restricted_min)},
          {"all_consistent", audit.cross.all_consistent ? "1" : "0"},
          {"eset_q", std::to_string(audit.eset_q)},
          {"eset_dim", std::to_string(audit.eset_dim)},
          {"factorization_residual_max", num(audit.factorization_max)},
          {"r4_max_rel_error", num(audit.r4_max_rel_error)},
          {"pass", audit.pass ? "1" : "0"},
      });
  if (!audit.pass)
    throw AuditMarginFailure(
        "audit: an observability margin is at or below the threshold");
  return audit;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const auto rows = sweep_run(cfg);
  std::ofstream out(dir / "sweep.csv");
  if (!out) throw IoFailure("cannot write sweep.csv");
  out << "parameter,value,final_p_error,rms_p_error,final_v_error,"
         "rms_v_error,final_g_error,rms_g_error,final_attitude_error,"
         "tail_rms_p_error,tail_rms_attitude_error,pe_margin_min,"
         "full_gramian_min,reduced_gramian_min\n";
  for (const SweepRow& row : rows) {
    const RunSummary& s = row.summary;
    const double fields[] = {
        row.value,           s.final_p_error,
        s.rms_p_error,       s.final_v_error,
        s.rms_v_error,       s.final_g_error,
        s.rms_g_error,       s.final_attitude_error,
        s.tail_rms_p_error,  s.tail_rms_attitude_error,
        s.pe_margin_min,     s.full_gramian_min,
        s.reduced_gramian_min};
    out << cfg.sweep_parameter;
    for (double f : fields) out << ',' << format_number(f);
    out << '\n';
  }
  out.flush();
  if (!out) throw IoFailure("write failed for sweep.csv");
  return rows;
}

}  // namespace rnav
