#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rnav/config.hpp"
#include "rnav/errors.hpp"
#include "rnav/pipeline.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 observer divergence, 4 audit
// margin failure, 1 anything else.
constexpr int kOk = 0;
constexpr int kOtherError = 1;
constexpr int kConfigError = 2;
constexpr int kDivergence = 3;
constexpr int kAuditFailure = 4;

int run(const CLI::App& app, const std::string& config_path,
        const std::string& out_dir, bool seed_given, std::uint64_t seed) {
  rnav::RunConfig cfg = config_path.empty()
                            ? rnav::RunConfig{}
                            : rnav::parse_config_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed_given) cfg.noise.seed = seed;

  if (app.got_subcommand("simulate")) {
    const std::size_t n = rnav::cmd_simulate(cfg);
    std::cout << "simulate: " << n << " samples -> " << cfg.out_dir << "\n";
  } else if (app.got_subcommand("observe")) {
    const rnav::RunSummary s = rnav::cmd_observe(cfg);
    std::cout << "observe: final_p_error=" << s.final_p_error
              << " final_attitude_error=" << s.final_attitude_error
              << " wall_time_s=" << s.wall_time_s << " -> " << cfg.out_dir
              << "\n";
  } else if (app.got_subcommand("audit")) {
    const rnav::AuditResult a = rnav::cmd_audit(cfg);
    std::cout << "audit: pass full_min=" << a.full_min
              << " reduced_min=" << a.reduced_min << " pe_min=" << a.pe_min
              << " -> " << cfg.out_dir << "\n";
  } else if (app.got_subcommand("sweep")) {
    const auto rows = rnav::cmd_sweep(cfg);
    std::cout << "sweep: " << rows.size() << " rows -> " << cfg.out_dir
              << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascaded single-range-aided inertial navigation simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "noise seed (overrides config)");

  app.add_subcommand("simulate", "generate truth and sensor logs")
      ->fallthrough();
  app.add_subcommand("observe", "run the full observer cascade")
      ->fallthrough();
  app.add_subcommand("audit", "certify observability margins")->fallthrough();
  app.add_subcommand("sweep", "observer runs over a parameter grid")
      ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    return run(app, config_path, out_dir, seed_opt->count() > 0, seed);
  } catch (const rnav::ObserverDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const rnav::PNotPositiveDefinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const rnav::AuditMarginFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAuditFailure;
  } catch (const rnav::ConfigParse& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rnav::BadConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rnav::InvalidGrid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rnav::HorizonExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rnav::IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOtherError;
  }
}
