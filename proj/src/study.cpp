#include "gyrovp/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gyrovp/diagnostics.hpp"
#include "gyrovp/error.hpp"
#include "gyrovp/fields.hpp"
#include "gyrovp/measures.hpp"

namespace gyrovp {

namespace {

namespace fs = std::filesystem;

// Concentration radii emitted as conc_r<r> channels in every run.
constexpr double kConcRadii[] = {0.25, 0.1, 0.05, 0.01};
// The limit system is not stiff; this is the unit-scale default step before
// snapping to the checkpoint grid.
constexpr double kVwDtMax = 0.01;

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> usable_checkpoints(const RunConfig& cfg) {
  std::vector<double> out;
  for (double c : cfg.checkpoints)
    if (c <= cfg.t_end * (1.0 + 1e-12)) out.push_back(c);
  return out;
}

// Writes into a staging sibling and renames into place, so a partially
// written run directory is never observable under its final name.
class StagedDir {
 public:
  explicit StagedDir(const fs::path& final_path) : final_(final_path) {
    const fs::path parent = final_.parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    tmp_ = parent / (".stage-" + final_.filename().string());
    fs::remove_all(tmp_);
    fs::create_directories(tmp_);
  }
  ~StagedDir() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(tmp_, ec);
    }
  }
  const fs::path& path() const { return tmp_; }
  void commit() {
    fs::remove_all(final_);
    fs::rename(tmp_, final_);
    committed_ = true;
  }

 private:
  fs::path final_;
  fs::path tmp_;
  bool committed_ = false;
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot create '" + p.string() + "'");
  return f;
}

BlobParams config_blob(const RunConfig& cfg) {
  return cfg.blob_delta > 0.0 ? BlobParams::blob(cfg.blob_delta)
                              : BlobParams::sharp_mode();
}

TimeSeries vw_series(const VortexTrajectory& traj) {
  TimeSeries ts;
  ts.times = traj.times;
  const std::size_t n = traj.samples();
  std::vector<double> mass(n), min_d(n);
  std::vector<std::vector<double>> conc(std::size(kConcRadii),
                                        std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    double m = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.weights.size(); ++i) {
      m += traj.weights[i];
      dmin = std::min(dmin, (traj.positions[k][i] - traj.xi[k]).norm());
    }
    mass[k] = m;
    min_d[k] = dmin;
    const WeightedMeasure rho = traj.measure_at(k);
    const Vec2 centers[] = {traj.xi[k]};
    for (std::size_t ri = 0; ri < std::size(kConcRadii); ++ri)
      conc[ri][k] = concentration_modulus(rho, kConcRadii[ri], centers);
  }
  ts.channels.emplace_back("mass", std::move(mass));
  ts.channels.emplace_back("min_dist", std::move(min_d));
  for (std::size_t ri = 0; ri < std::size(kConcRadii); ++ri) {
    char name[32];
    std::snprintf(name, sizeof name, "conc_r%g", kConcRadii[ri]);
    ts.channels.emplace_back(name, std::move(conc[ri]));
  }
  return ts;
}

}  // namespace

double snapped_dt(double dt_max, double t_end,
                  std::span<const double> checkpoints) {
  if (!(dt_max > 0.0) || !std::isfinite(dt_max))
    throw std::invalid_argument("dt_max must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("t_end must be positive");
  const auto to_grid = [](double v) {
    const double scaled = v * 1e6;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-3 * std::max(1.0, std::abs(scaled)) ||
        rounded < 1.0)
      throw std::invalid_argument(
          "times must be positive multiples of 1e-6");
    return static_cast<long long>(rounded);
  };
  long long g = to_grid(t_end);
  for (double c : checkpoints) {
    if (!(c > 0.0) || c > t_end * (1.0 + 1e-12))
      throw std::invalid_argument("checkpoints must lie in (0, t_end]");
    g = std::gcd(g, to_grid(c));
  }
  const double base = static_cast<double>(g) * 1e-6;
  const double k = std::max(1.0, std::ceil(base / dt_max - 1e-9));
  return base / k;
}

Trajectory run_vp_mode(const RunConfig& cfg, double eps,
                       const std::filesystem::path& out_dir) {
  InitialDataSpec spec = cfg.initial;
  spec.seed = cfg.seed;
  VPState state =
      sample_initial_data(spec, eps, cfg.xi0, cfg.eta0, cfg.gamma,
                          config_blob(cfg));
  const std::vector<double> cps = usable_checkpoints(cfg);
  const double dt = snapped_dt(cfg.c_rot * eps * eps, cfg.t_end, cps);

  StagedDir stage(out_dir);
  {
    auto f = open_out(stage.path() / "particles_initial.csv");
    write_phase_csv(f, state);
  }
  Trajectory traj = run(std::move(state), cfg.t_end, dt, cfg.stride, {}, cps);
  {
    auto f = open_out(stage.path() / "particles_final.csv");
    write_phase_csv(f, traj.final_state);
  }
  {
    auto f = open_out(stage.path() / "charge.csv");
    write_charge_csv(f, traj);
  }
  {
    RunMetadata meta;
    meta.eps = eps;
    meta.gamma = cfg.gamma;
    meta.n = traj.weights.size();
    meta.dt = dt;
    meta.delta = cfg.blob_delta;
    meta.seed = cfg.seed;
    meta.stride = cfg.stride;
    const TimeSeries series = diagnostics_series(traj, kConcRadii, {});
    auto f = open_out(stage.path() / "diagnostics.jsonl");
    write_diagnostics_jsonl(f, meta, series);
  }
  stage.commit();
  return traj;
}

VortexTrajectory run_vw_mode(const RunConfig& cfg,
                             const std::filesystem::path& out_dir) {
  InitialDataSpec spec = cfg.initial;
  spec.seed = cfg.seed;
  // The sampled positions and weights do not depend on eps or gamma, so the
  // projection can reuse the phase-space sampler with any valid values.
  const double sample_gamma = cfg.gamma > 0.0 ? cfg.gamma : 1.0;
  const VPState phase =
      sample_initial_data(spec, cfg.eps_list.front(), cfg.xi0, cfg.eta0,
                          sample_gamma, config_blob(cfg));

  VortexState state;
  state.rho = phase.spatial_measure();
  state.xi = cfg.xi0;
  state.gamma = cfg.gamma;
  state.blob = config_blob(cfg);

  const std::vector<double> cps = usable_checkpoints(cfg);
  const double dt = snapped_dt(kVwDtMax, cfg.t_end, cps);

  StagedDir stage(out_dir);
  {
    auto f = open_out(stage.path() / "blobs_initial.csv");
    write_blob_csv(f, state.rho);
  }
  VortexTrajectory traj =
      vw_run(std::move(state), cfg.t_end, dt, cfg.stride, cps);
  {
    auto f = open_out(stage.path() / "blobs_final.csv");
    write_blob_csv(f, traj.final_state.rho);
  }
  {
    auto f = open_out(stage.path() / "charge.csv");
    write_charge_csv(f, traj);
  }
  {
    RunMetadata meta;
    meta.eps = 0.0;  // the limit system
    meta.gamma = cfg.gamma;
    meta.n = traj.weights.size();
    meta.dt = dt;
    meta.delta = cfg.blob_delta;
    meta.seed = cfg.seed;
    meta.stride = cfg.stride;
    auto f = open_out(stage.path() / "diagnostics.jsonl");
    write_diagnostics_jsonl(f, meta, vw_series(traj));
  }
  stage.commit();
  return traj;
}

StudyReport run_convergence_study(const RunConfig& cfg,
                                  const std::filesystem::path& out_root) {
  if (cfg.mode != RunMode::sweep)
    throw ConfigError("a convergence study needs mode = sweep", "mode", 0);
  fs::create_directories(out_root);

  const VortexTrajectory reference =
      run_vw_mode(cfg, out_root / "vw_reference");
  const TestDictionary dictionary = TestDictionary::bump_grid(cfg.dictionary);
  const std::vector<double> cps = usable_checkpoints(cfg);

  StudyReport report;
  for (double eps : cfg.eps_list) {
    const fs::path dir = out_root / ("eps_" + format_g(eps));
    try {
      const Trajectory traj = run_vp_mode(cfg, eps, dir);
      for (double c : cps) {
        const std::size_t k = traj.nearest_sample(c);
        const std::size_t kr = reference.nearest_sample(c);
        SweepRow row;
        row.eps = eps;
        row.t = c;
        row.rho_dist = dual_norm_distance(traj.spatial_measure_at(k),
                                          reference.measure_at(kr),
                                          dictionary);
        row.xi_dist = (traj.xi[k] - reference.xi[kr]).norm();
        row.status = "ok";
        report.rows.push_back(std::move(row));
      }
    } catch (const NearCollisionError&) {
      report.rows.push_back({eps, std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN(),
                             "near-collision"});
    } catch (const BlowupError&) {
      report.rows.push_back({eps, std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN(),
                             "blow-up"});
    }
  }

  report.summary_csv = out_root / "summary.csv";
  auto f = open_out(report.summary_csv);
  f << "eps,t,rho_dist,xi_dist,status\n";
  for (const auto& row : report.rows) {
    f << format_double(row.eps) << ',' << format_double(row.t) << ','
      << format_double(row.rho_dist) << ',' << format_double(row.xi_dist)
      << ',' << row.status << '\n';
  }
  return report;
}

std::vector<CheckResult> check_diagnostics(const DiagnosticsFile& file) {
  std::vector<CheckResult> out;
  const auto add = [&](const std::string& name, bool pass,
                       std::string detail) {
    out.push_back({name, pass, std::move(detail)});
  };
  const TimeSeries& s = file.series;

  bool increasing = !s.times.empty();
  for (std::size_t k = 1; k < s.times.size(); ++k)
    increasing = increasing && s.times[k] > s.times[k - 1];
  add("times", increasing,
      "strictly increasing over " + std::to_string(s.times.size()) +
          " samples");

  bool aligned = true;
  for (const auto& [name, values] : s.channels)
    aligned = aligned && values.size() == s.times.size();
  add("layout", aligned, "every channel matches the time axis");

  bool finite = true;
  for (const auto& [name, values] : s.channels)
    for (double v : values) finite = finite && std::isfinite(v);
  add("finite", finite, "all channel values finite");

  const auto drift_check = [&](const char* name, double tol) {
    if (!s.has_channel(name)) return;
    const auto& v = s.channel(name);
    if (v.empty()) return;
    double drift = 0.0;
    for (double x : v) drift = std::max(drift, std::abs(x - v.front()));
    const double rel = drift / std::max(1.0, std::abs(v.front()));
    add(name, rel <= tol,
        "relative drift " + format_g(rel) + " (tolerance " + format_g(tol) +
            ")");
  };
  drift_check("mass", 1e-9);
  drift_check("H", 5e-2);
  drift_check("I", 1e-9);

  if (s.has_channel("min_dist")) {
    bool positive = true;
    for (double v : s.channel("min_dist")) positive = positive && v > 0.0;
    add("min_dist", positive, "charge-plasma separation stays positive");
  }

  if (s.has_channel("mass")) {
    const double mass0 =
        s.channel("mass").empty() ? 0.0 : s.channel("mass").front();
    bool bounded = true;
    for (const auto& [name, values] : s.channels) {
      if (name.rfind("conc_r", 0) != 0) continue;
      for (double v : values)
        bounded = bounded && v >= 0.0 && v <= mass0 * (1.0 + 1e-9);
    }
    add("concentration", bounded, "conc channels lie in [0, mass]");
  }
  return out;
}

}  // namespace gyrovp
