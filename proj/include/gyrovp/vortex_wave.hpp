#ifndef GYROVP_VORTEX_WAVE_HPP
#define GYROVP_VORTEX_WAVE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gyrovp/fields.hpp"
#include "gyrovp/measure.hpp"
#include "gyrovp/vec2.hpp"

namespace gyrovp {

/// State of the limit system: a vorticity density carried by weighted blobs
/// plus a point vortex of strength gamma at xi. gamma == 0 drops the point
/// term and the system reduces to blob-discretized 2D incompressible Euler
/// (xi is then advected passively).
struct VortexState {
  WeightedMeasure rho;
  Vec2 xi;
  double gamma = 0.0;  // >= 0
  double t = 0.0;
  BlobParams blob;
};

/// Advection velocity of material at x: perp of the blob-regularized field of
/// rho (excluding atom `exclude` when given) plus the sharp point-vortex term
/// gamma (x - xi)^perp / |x - xi|^2 when gamma > 0.
Vec2 vw_velocity(const VortexState& state, Vec2 x,
                 std::optional<std::size_t> exclude = std::nullopt);

/// Velocity of the point xi: perp of the sharp field of rho summed over the
/// blob atoms (no self term by construction).
Vec2 vw_velocity_at_charge(const VortexState& state);

/// One classical RK4 step of size dt for all blob positions and xi together.
/// Weights are never modified (total vorticity is conserved exactly). Throws
/// NearCollisionError when a blob-charge distance falls below 1e-10 with
/// gamma > 0, and BlowupError on non-finite state.
void vw_step(VortexState& state, double dt);

/// Recorded samples of a vortex-wave run.
struct VortexTrajectory {
  double gamma = 0.0;
  double dt = 0.0;
  BlobParams blob;
  std::size_t stride = 1;
  std::vector<double> weights;

  std::vector<double> times;
  std::vector<std::vector<Vec2>> positions;
  std::vector<Vec2> xi;
  VortexState final_state;

  std::size_t samples() const { return times.size(); }
  VortexState state_at(std::size_t k) const;
  WeightedMeasure measure_at(std::size_t k) const;
  /// Index of the recorded time nearest to t; throws std::out_of_range when t
  /// lies outside the recorded range.
  std::size_t nearest_sample(double t) const;
};

/// Advances the state to t_end with fixed RK4 steps of dt (last step
/// shortened to land exactly). Sampling rules match the finite-eps runner:
/// records at start, every `stride`-th step, capture times hit by a step
/// boundary, and t_end; t_end == state.t returns an empty series.
VortexTrajectory vw_run(VortexState state, double t_end, double dt,
                        std::size_t stride,
                        std::span<const double> capture_times = {});

}  // namespace gyrovp

#endif  // GYROVP_VORTEX_WAVE_HPP
