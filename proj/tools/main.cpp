#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gyrovp/config.hpp"
#include "gyrovp/error.hpp"
#include "gyrovp/io.hpp"
#include "gyrovp/parallel.hpp"
#include "gyrovp/study.hpp"

namespace {

gyrovp::RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw gyrovp::ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return gyrovp::parse_config(buf.str());
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 1;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Path to a key = value config")
        ->required();
    cmd->add_option("--out", out_dir, "Output directory (overrides config)");
    seed_opt = cmd->add_option("--seed", seed, "Sampler seed (overrides config)");
    cmd->add_option("--threads", threads,
                    "Worker threads for field summation (results are "
                    "bitwise independent of this)")
        ->check(CLI::PositiveNumber);
  }

  gyrovp::RunConfig load() const {
    gyrovp::RunConfig cfg = load_config(config_path);
    if (seed_opt->count() > 0) {
      cfg.seed = seed;
      cfg.initial.seed = seed;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    gyrovp::set_worker_threads(threads);
    return cfg;
  }
};

int run_check(const std::string& dir) {
  const std::filesystem::path file =
      std::filesystem::path(dir) / "diagnostics.jsonl";
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw gyrovp::ConfigError("cannot open '" + file.string() + "'");
  const gyrovp::DiagnosticsFile diag = gyrovp::read_diagnostics_jsonl(in);
  bool all = true;
  for (const auto& r : gyrovp::check_diagnostics(diag)) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": "
              << r.detail << '\n';
    all = all && r.pass;
  }
  std::cout << (all ? "check passed" : "check failed") << '\n';
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Magnetized 2D plasma with a point charge: finite-eps particle runs, "
      "limit-system references, and eps-sweep comparisons"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CommonFlags sweep_flags;
  std::string check_dir;

  CLI::App* run_cmd = app.add_subcommand(
      "run", "Execute one run (config mode vp or vw) and write its outputs");
  run_flags.attach(run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run the eps sweep against a shared limit-system reference");
  sweep_flags.attach(sweep_cmd);

  CLI::App* check_cmd = app.add_subcommand(
      "check", "Verify the invariants recorded in a run directory");
  check_cmd->add_option("--out", check_dir, "Run directory to check")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      const gyrovp::RunConfig cfg = run_flags.load();
      if (cfg.mode == gyrovp::RunMode::sweep)
        throw gyrovp::ConfigError(
            "the run verb needs mode vp or vw; use the sweep verb", "mode", 0);
      if (cfg.mode == gyrovp::RunMode::vp) {
        const auto traj =
            gyrovp::run_vp_mode(cfg, cfg.eps_list.front(), cfg.out_dir);
        std::cout << "vp run complete: " << traj.weights.size()
                  << " particles to t = " << cfg.t_end << ", outputs in "
                  << cfg.out_dir << '\n';
      } else {
        const auto traj = gyrovp::run_vw_mode(cfg, cfg.out_dir);
        std::cout << "vw run complete: " << traj.weights.size()
                  << " blobs to t = " << cfg.t_end << ", outputs in "
                  << cfg.out_dir << '\n';
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      const gyrovp::RunConfig cfg = sweep_flags.load();
      if (cfg.mode != gyrovp::RunMode::sweep)
        throw gyrovp::ConfigError("the sweep verb needs mode = sweep", "mode",
                                  0);
      const gyrovp::StudyReport report =
          gyrovp::run_convergence_study(cfg, cfg.out_dir);
      std::cout << "eps,t,rho_dist,xi_dist,status\n";
      for (const auto& row : report.rows) {
        std::cout << gyrovp::format_double(row.eps) << ','
                  << gyrovp::format_double(row.t) << ','
                  << gyrovp::format_double(row.rho_dist) << ','
                  << gyrovp::format_double(row.xi_dist) << ',' << row.status
                  << '\n';
      }
      std::cout << "summary written to " << report.summary_csv.string()
                << '\n';
      return 0;
    }
    return run_check(check_dir);
  } catch (const gyrovp::ConfigError& e) {
    std::cerr << "config error: " << e.what();
    if (!e.key.empty()) std::cerr << " [key: " << e.key << "]";
    std::cerr << '\n';
    return 2;
  } catch (const gyrovp::NearCollisionError& e) {
    std::cerr << "aborted: charge-plasma near-collision (distance "
              << gyrovp::format_double(e.distance) << ") at t = "
              << gyrovp::format_double(e.time) << '\n';
    return 3;
  } catch (const gyrovp::BlowupError& e) {
    std::cerr << "aborted: non-finite state at t = "
              << gyrovp::format_double(e.time) << ": " << e.what() << '\n';
    return 3;
  } catch (const gyrovp::SingularityError& e) {
    std::cerr << "aborted: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
