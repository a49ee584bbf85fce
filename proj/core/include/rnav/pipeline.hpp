#pragma once

#include <string>
#include <vector>

#include "rnav/attitude.hpp"
#include "rnav/config.hpp"
#include "rnav/io.hpp"
#include "rnav/observability.hpp"
#include "rnav/riccati.hpp"
#include "rnav/scenario.hpp"

namespace rnav {

// End-to-end runs: truth generation -> sensors -> Riccati observer ->
// attitude filter, plus the windowed observability audit. Everything here is
// deterministic in the config (and its seed); wall time is the only
// measured-not-derived quantity, so it is reported in memory but kept out of
// the emitted files.

/// Scalar summary of one cascade run. Errors are body-frame norms against
/// the ground truth; "tail" statistics cover the last quarter of the run.
struct RunSummary {
  double final_p_error = 0.0;
  double rms_p_error = 0.0;
  double final_v_error = 0.0;
  double rms_v_error = 0.0;
  double final_g_error = 0.0;
  double rms_g_error = 0.0;
  double final_attitude_error = 0.0;
  double tail_rms_p_error = 0.0;
  double tail_rms_attitude_error = 0.0;
  double pe_margin_min = 0.0;       // min over the audit windows
  double full_gramian_min = 0.0;
  double reduced_gramian_min = 0.0;
  double wall_time_s = 0.0;
};

/// Numerical-hygiene high-water marks collected while stepping the cascade.
struct CascadeDiagnostics {
  double max_rotation_invariant_error = 0.0;  // truth and estimate
  double max_p_asymmetry = 0.0;               // before re-symmetrisation
  long steps = 0;
};

struct RunResult {
  std::vector<RigidBodyTruth> truth;
  std::vector<SensorSample> sensors;
  std::vector<RiccatiLogRow> riccati_log;
  std::vector<AttitudeLogRow> attitude_log;
  RunSummary summary;
  CascadeDiagnostics diagnostics;
};

/// Result of the observability audit on the configured scenario.
struct AuditResult {
  CrossCheckReport cross;
  double full_min = 0.0;     // min over windows, per level
  double reduced_min = 0.0;
  double pe_min = 0.0;
  double restricted_min = 0.0;
  double factorization_max = 0.0;  // worst window residual
  double r4_max_rel_error = 0.0;
  int eset_q = 0;
  int eset_dim = 0;
  bool pass = false;  // every level margin above the configured threshold
};

/// The trajectory selected by config.scenario.
TrajectorySpec scenario_trajectory(const RunConfig& config);

/// Noiseless truth grid for the configured scenario: T/dt + 1 samples.
std::vector<RigidBodyTruth> simulate_truth(const RunConfig& config);

/// One sensor sample per truth sample, seeded from the config.
std::vector<SensorSample> simulate_sensors(
    const RunConfig& config, const std::vector<RigidBodyTruth>& truth);

/// The sliding audit windows (start, length) implied by the config.
std::vector<std::pair<double, double>> audit_windows(const RunConfig& config);

/// Full cascade run with per-step logs. PNotPositiveDefinite from the
/// observer is rethrown as ObserverDiverged with the failing step attached.
RunResult observe_run(const RunConfig& config);

/// Windowed three-level observability audit plus the structural checks
/// (excitation subspace, transition-matrix factorization, r4 agreement).
AuditResult audit_run(const RunConfig& config);

struct SweepRow {
  double value = 0.0;
  RunSummary summary;
};

/// One observe_run per sweep value, in parallel; rows in grid order.
/// Throws ConfigParse if the sweep parameter or grid is missing/invalid.
std::vector<SweepRow> sweep_run(const RunConfig& config);

// File-writing command entry points. Each creates the output directory and
// writes its artifacts; failures surface as the exceptions the CLI maps to
// exit codes. Return values summarise what was written for status output.

/// Writes truth_sensors.csv; returns the row count.
std::size_t cmd_simulate(const RunConfig& config);

/// Writes truth_sensors.csv, riccati.csv, attitude.csv, summary.txt.
RunSummary cmd_observe(const RunConfig& config);

/// Writes audit.csv and audit_summary.txt; throws AuditMarginFailure (after
/// writing both files) if any level margin is at or below the threshold.
AuditResult cmd_audit(const RunConfig& config);

/// Writes sweep.csv; returns the rows.
std::vector<SweepRow> cmd_sweep(const RunConfig& config);

}  // namespace rnav
