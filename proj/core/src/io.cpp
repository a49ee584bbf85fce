#include "rnav/io.hpp"

#include <cstdio>
#include <fstream>

#include "rnav/errors.hpp"

namespace rnav {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoFailure("io: cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoFailure("io: write failed for " + path);
}

void append_numbers(std::string& line, const double* values, int count) {
  for (int i = 0; i < count; ++i) {
    line += ',';
    line += format_number(values[i]);
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_truth_sensors_csv(const std::string& path,
                             const std::vector<RigidBodyTruth>& truth,
                             const std::vector<SensorSample>& sensors) {
  if (truth.size() != sensors.size())
    throw IoFailure("io: truth/sensor row count mismatch");
  auto out = open_out(path);
  out << "t,p_x,p_y,p_z,v_x,v_y,v_z,"
         "R_00,R_01,R_02,R_10,R_11,R_12,R_20,R_21,R_22,"
         "a_b_x,a_b_y,a_b_z,omega_x,omega_y,omega_z,range,"
         "gyro_x,gyro_y,gyro_z,acc_x,acc_y,acc_z,mag_x,mag_y,mag_z\n";
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const RigidBodyTruth& s = truth[k];
    const SensorSample& m = sensors[k];
    std::string line = format_number(s.t);
    append_numbers(line, s.p_i.data(), 3);
    append_numbers(line, s.v_i.data(), 3);
    const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> r =
        s.R.matrix();
    append_numbers(line, r.data(), 9);
    append_numbers(line, s.a_b.data(), 3);
    append_numbers(line, s.omega.data(), 3);
    append_numbers(line, &m.range, 1);
    append_numbers(line, m.gyro.data(), 3);
    append_numbers(line, m.accel.data(), 3);
    append_numbers(line, m.mag.data(), 3);
    out << line << '\n';
  }
  finish(out, path);
}

void write_riccati_csv(const std::string& path,
                       const std::vector<RiccatiLogRow>& rows) {
  auto out = open_out(path);
  out << "t,aux_1,aux_2,aux_3,aux_4,p_b_x,p_b_y,p_b_z,"
         "v_b_x,v_b_y,v_b_z,g_b_x,g_b_y,g_b_z,"
         "trace_p,min_eig_p,innovation\n";
  for (const RiccatiLogRow& row : rows) {
    std::string line = format_number(row.t);
    append_numbers(line, row.x.data(), kAugDim);
    append_numbers(line, &row.trace_p, 1);
    append_numbers(line, &row.min_eig_p, 1);
    append_numbers(line, &row.innovation, 1);
    out << line << '\n';
  }
  finish(out, path);
}

void write_attitude_csv(const std::string& path,
                        const std::vector<AttitudeLogRow>& rows) {
  auto out = open_out(path);
  out << "t,rhat_00,rhat_01,rhat_02,rhat_10,rhat_11,rhat_12,"
         "rhat_20,rhat_21,rhat_22,attitude_error_rad\n";
  for (const AttitudeLogRow& row : rows) {
    std::string line = format_number(row.t);
    const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> r = row.rhat;
    append_numbers(line, r.data(), 9);
    append_numbers(line, &row.attitude_error, 1);
    out << line << '\n';
  }
  finish(out, path);
}

void write_audit_csv(const std::string& path,
                     const std::vector<WindowCheck>& windows) {
  auto out = open_out(path);
  out << "window_start,delta,level,min_eig\n";
  for (const WindowCheck& w : windows) {
    const std::pair<GramianLevel, double> levels[] = {
        {GramianLevel::full_augmented, w.full_min},
        {GramianLevel::reduced_pair, w.reduced_min},
        {GramianLevel::pe_phi, w.pe_min},
    };
    for (const auto& [level, min_eig] : levels)
      out << format_number(w.t_start) << ',' << format_number(w.delta) << ','
          << to_string(level) << ',' << format_number(min_eig) << '\n';
  }
  finish(out, path);
}

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>&
                       entries) {
  auto out = open_out(path);
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  finish(out, path);
}

}  // namespace rnav
