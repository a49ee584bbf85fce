#include "rnav/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "rnav/errors.hpp"

namespace rnav {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& key,
                                  const std::string& value) {
  std::istringstream in(value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigParse("config: bad number '" + tok + "' for key " + key);
    }
  }
  return out;
}

double parse_one(const std::string& key, const std::string& value) {
  const auto nums = parse_numbers(key, value);
  if (nums.size() != 1)
    throw ConfigParse("config: key " + key + " takes one number");
  return nums[0];
}

Vec3 parse_vec3(const std::string& key, const std::string& value) {
  const auto nums = parse_numbers(key, value);
  if (nums.size() != 3)
    throw ConfigParse("config: key " + key + " takes three numbers");
  return Vec3(nums[0], nums[1], nums[2]);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const double d = parse_one(key, value);
  if (d < 0.0 || d != std::floor(d))
    throw ConfigParse("config: key " + key +
                      " takes a non-negative integer");
  return static_cast<std::uint64_t>(d);
}

// traj.{pos|omega}.{x|y|z}.{poly|sin}
bool assign_trajectory_key(RunConfig& cfg, const std::string& key,
                           const std::string& value) {
  if (key.rfind("traj.", 0) != 0) return false;
  if (key == "traj.r0") {
    cfg.custom.r0 = exp_so3(parse_vec3(key, value));
    return true;
  }
  if (key == "traj.horizon") {
    cfg.custom.horizon = parse_one(key, value);
    if (!(cfg.custom.horizon > 0.0))
      throw ConfigParse("config: traj.horizon must be positive");
    return true;
  }

  std::istringstream in(key);
  std::string part[4];
  for (auto& p : part)
    if (!std::getline(in, p, '.'))
      throw ConfigParse("config: unknown key " + key);
  if (!in.eof()) throw ConfigParse("config: unknown key " + key);

  AxisSignal* group = nullptr;
  if (part[1] == "pos")
    group = cfg.custom.pos;
  else if (part[1] == "omega")
    group = cfg.custom.omega;
  else
    throw ConfigParse("config: unknown key " + key);

  int axis = -1;
  if (part[2] == "x") axis = 0;
  else if (part[2] == "y") axis = 1;
  else if (part[2] == "z") axis = 2;
  else
    throw ConfigParse("config: unknown key " + key);

  AxisSignal& sig = group[axis];
  const auto nums = parse_numbers(key, value);
  if (part[3] == "poly") {
    if (nums.empty() || nums.size() > 3)
      throw ConfigParse("config: " + key + " takes 1-3 coefficients");
    sig.c0 = nums.size() > 0 ? nums[0] : 0.0;
    sig.c1 = nums.size() > 1 ? nums[1] : 0.0;
    sig.c2 = nums.size() > 2 ? nums[2] : 0.0;
  } else if (part[3] == "sin") {
    if (nums.empty() || nums.size() % 3 != 0)
      throw ConfigParse("config: " + key + " takes amp freq phase triples");
    sig.terms.clear();
    for (std::size_t i = 0; i < nums.size(); i += 3)
      sig.terms.push_back({nums[i], nums[i + 1], nums[i + 2]});
  } else {
    throw ConfigParse("config: unknown key " + key);
  }
  return true;
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    cfg.scenario = value;
  } else if (key == "dt") {
    cfg.dt = parse_one(key, value);
  } else if (key == "T") {
    cfg.T = parse_one(key, value);
  } else if (key == "seed") {
    cfg.noise.seed = parse_u64(key, value);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "world.gravity") {
    cfg.world.gravity_i = parse_vec3(key, value);
  } else if (key == "world.mag_dir") {
    cfg.world.mag_dir_i = parse_vec3(key, value);
  } else if (key == "world.anchor") {
    cfg.world.anchor_i = parse_vec3(key, value);
  } else if (key == "noise.sigma_gyro") {
    cfg.noise.sigma_omega = parse_one(key, value);
  } else if (key == "noise.sigma_acc") {
    cfg.noise.sigma_acc = parse_one(key, value);
  } else if (key == "noise.sigma_mag") {
    cfg.noise.sigma_mag = parse_one(key, value);
  } else if (key == "noise.sigma_range") {
    cfg.noise.sigma_uwb = parse_one(key, value);
  } else if (key == "riccati.p0") {
    cfg.riccati_p0 = parse_one(key, value);
  } else if (key == "riccati.q") {
    cfg.riccati_q = parse_one(key, value);
  } else if (key == "riccati.v") {
    cfg.riccati_v = parse_one(key, value);
  } else if (key == "riccati.x0") {
    const auto nums = parse_numbers(key, value);
    if (nums.size() != static_cast<std::size_t>(kAugDim))
      throw ConfigParse("config: riccati.x0 takes 13 numbers");
    for (int i = 0; i < kAugDim; ++i) cfg.riccati_x0(i) = nums[i];
  } else if (key == "attitude.k1") {
    cfg.attitude_k1 = parse_one(key, value);
  } else if (key == "attitude.rho1") {
    cfg.attitude_rho1 = parse_one(key, value);
  } else if (key == "attitude.rho2") {
    cfg.attitude_rho2 = parse_one(key, value);
  } else if (key == "attitude.rhat0") {
    cfg.attitude_rhat0 = parse_vec3(key, value);
  } else if (key == "audit.delta") {
    cfg.audit_delta = parse_one(key, value);
  } else if (key == "audit.stride") {
    cfg.audit_stride = parse_one(key, value);
  } else if (key == "audit.threshold") {
    cfg.audit_threshold = parse_one(key, value);
  } else if (key == "free_fall.p0") {
    cfg.free_fall_p0 = parse_vec3(key, value);
  } else if (key == "free_fall.v0") {
    cfg.free_fall_v0 = parse_vec3(key, value);
  } else if (key == "sweep.parameter") {
    cfg.sweep_parameter = value;
  } else if (key == "sweep.values") {
    cfg.sweep_values = parse_numbers(key, value);
  } else if (!assign_trajectory_key(cfg, key, value)) {
    throw ConfigParse("config: unknown key " + key);
  }
}

void validate(const RunConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigParse("config: dt must be positive");
  if (!(cfg.T > cfg.dt)) throw ConfigParse("config: T must exceed dt");
  if (cfg.scenario != "eight" && cfg.scenario != "free_fall" &&
      cfg.scenario != "custom")
    throw ConfigParse("config: unknown scenario '" + cfg.scenario + "'");
  if (cfg.noise.sigma_omega < 0.0 || cfg.noise.sigma_acc < 0.0 ||
      cfg.noise.sigma_mag < 0.0 || cfg.noise.sigma_uwb < 0.0)
    throw ConfigParse("config: noise sigmas must be non-negative");
  if (!(cfg.riccati_p0 > 0.0))
    throw ConfigParse("config: riccati.p0 must be positive");
  if (cfg.riccati_q < 0.0 || cfg.riccati_v < 0.0)
    throw ConfigParse("config: riccati.q and riccati.v must be >= 0");
  if (!(cfg.attitude_k1 > 0.0))
    throw ConfigParse("config: attitude.k1 must be positive");
  if (cfg.attitude_rho1 < 0.0 ||
      (cfg.attitude_rho2 && *cfg.attitude_rho2 < 0.0))
    throw ConfigParse("config: attitude.rho gains must be >= 0");
  if (!(cfg.audit_delta > 0.0) || !(cfg.audit_stride > 0.0))
    throw ConfigParse("config: audit.delta and audit.stride must be positive");
  if (cfg.audit_delta > cfg.T)
    throw ConfigParse("config: audit.delta exceeds the run length");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigParse("config: line " + std::to_string(line_no) +
                        " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigParse("config: empty key on line " +
                        std::to_string(line_no));
    if (!seen.insert(key).second)
      throw ConfigParse("config: duplicate key " + key);
    assign(cfg, key, value);
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("config: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void set_numeric_key(RunConfig& cfg, const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  if (key == "scenario" || key == "out" || key == "sweep.parameter" ||
      key == "sweep.values" || key.rfind("traj.", 0) == 0 ||
      key.rfind("world.", 0) == 0 || key.rfind("free_fall.", 0) == 0 ||
      key == "riccati.x0" || key == "attitude.rhat0")
    throw ConfigParse("config: key " + key + " is not sweepable");
  assign(cfg, key, buf);
  validate(cfg);
}

}  // namespace rnav
