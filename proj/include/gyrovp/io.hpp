#ifndef GYROVP_IO_HPP
#define GYROVP_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "gyrovp/diagnostics.hpp"
#include "gyrovp/measure.hpp"
#include "gyrovp/vortex_wave.hpp"
#include "gyrovp/vp_sim.hpp"

namespace gyrovp {

/// 17-significant-digit decimal rendering ('.' separator, locale-free);
/// round-trips every finite double exactly.
std::string format_double(double v);

/// Run parameters echoed at the head of every diagnostics file.
struct RunMetadata {
  double eps = 0.0;
  double gamma = 0.0;
  std::uint64_t n = 0;
  double dt = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stride = 0;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

/// Phase-space snapshot: header `x1,x2,v1,v2,w`, one row per particle.
void write_phase_csv(std::ostream& os, const VPState& state);
/// Position-space snapshot: header `x1,x2,w`, one row per atom.
void write_blob_csv(std::ostream& os, const WeightedMeasure& rho);
/// Charge track of a finite-eps run: header `t,xi1,xi2,eta1,eta2`.
void write_charge_csv(std::ostream& os, const Trajectory& traj);
/// Charge track of a limit-system run: header `t,xi1,xi2`.
void write_charge_csv(std::ostream& os, const VortexTrajectory& traj);

/// JSON Lines: first a metadata record {eps, gamma, N, dt, delta, seed,
/// stride}, then one record per sample holding t plus every series channel.
void write_diagnostics_jsonl(std::ostream& os, const RunMetadata& meta,
                             const TimeSeries& series);

struct DiagnosticsFile {
  RunMetadata meta;
  TimeSeries series;
};

/// Inverse of write_diagnostics_jsonl. Malformed documents raise ConfigError
/// with the offending line number.
DiagnosticsFile read_diagnostics_jsonl(std::istream& is);

}  // namespace gyrovp

#endif  // GYROVP_IO_HPP
