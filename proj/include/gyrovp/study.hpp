#ifndef GYROVP_STUDY_HPP
#define GYROVP_STUDY_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gyrovp/config.hpp"
#include "gyrovp/io.hpp"
#include "gyrovp/vortex_wave.hpp"
#include "gyrovp/vp_sim.hpp"

namespace gyrovp {

/// Largest step of the form g/k (k a positive integer, g the common 1e-6
/// grid of t_end and the checkpoints) that does not exceed dt_max, so every
/// checkpoint lands exactly on a step boundary.
double snapped_dt(double dt_max, double t_end,
                  std::span<const double> checkpoints);

/// Samples the configured initial data at the given eps, integrates to
/// t_end with dt = snapped(c_rot * eps^2), checkpoints recorded exactly,
/// and writes particles_initial.csv, particles_final.csv, charge.csv,
/// diagnostics.jsonl into out_dir (created atomically via a staging
/// directory; an existing out_dir is replaced).
Trajectory run_vp_mode(const RunConfig& cfg, double eps,
                       const std::filesystem::path& out_dir);

/// Limit-system reference: drops each sampled particle's velocity (keeping
/// position and weight) and the charge velocity, then integrates the
/// advection system from the identical spatial data, writing
/// blobs_initial.csv, blobs_final.csv, charge.csv, diagnostics.jsonl into
/// out_dir. The sampled spatial marginal does not depend on eps, so one
/// reference serves every eps in a sweep.
VortexTrajectory run_vw_mode(const RunConfig& cfg,
                             const std::filesystem::path& out_dir);

struct SweepRow {
  double eps = 0.0;
  double t = 0.0;
  double rho_dist = 0.0;  // dictionary dual-norm distance to the reference
  double xi_dist = 0.0;   // |xi_eps(t) - xi_vw(t)|
  std::string status;     // "ok" or the per-eps failure label
};

struct StudyReport {
  std::vector<SweepRow> rows;
  std::filesystem::path summary_csv;
};

/// For each eps: a finite-eps run (run_vp_mode into out_root/eps_<eps>)
/// compared at every checkpoint against one shared limit-system reference
/// (run_vw_mode into out_root/vw_reference) with one shared dictionary.
/// A failing eps contributes a row with its error label and does not stop
/// the remaining eps values. Writes out_root/summary.csv with header
/// eps,t,rho_dist,xi_dist,status.
StudyReport run_convergence_study(const RunConfig& cfg,
                                  const std::filesystem::path& out_root);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Invariant suite over a saved diagnostics file: monotone times, exact mass
/// conservation, small energy drift, near-exact momentum conservation,
/// positive charge-plasma separation, concentration bounded by mass.
std::vector<CheckResult> check_diagnostics(const DiagnosticsFile& file);

}  // namespace gyrovp

#endif  // GYROVP_STUDY_HPP
