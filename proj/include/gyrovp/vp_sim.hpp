#ifndef GYROVP_VP_SIM_HPP
#define GYROVP_VP_SIM_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gyrovp/fields.hpp"
#include "gyrovp/measure.hpp"
#include "gyrovp/vec2.hpp"

namespace gyrovp {

/// One phase-space quadrature node of the plasma distribution.
struct PhaseParticle {
  Vec2 x;
  Vec2 v;
  double w = 0.0;
};

/// Point charge: position xi, scaled velocity eta, coupling strength
/// gamma > 0 (repulsive).
struct ChargeState {
  Vec2 xi;
  Vec2 eta;
  double gamma = 1.0;
};

/// Test hooks for the charge coupling.
///   full:     charge generates a field and moves self-consistently
///   frozen:   charge generates a field but xi, eta stay fixed
///   disabled: no charge field, no charge terms in any functional
enum class ChargeCoupling { full, frozen, disabled };

/// Full simulation state at one instant. Weights are fixed at sampling time
/// and never modified afterwards, so the total mass is conserved to 0 ulp.
struct VPState {
  std::vector<PhaseParticle> particles;
  ChargeState charge;
  double eps = 1.0;
  double t = 0.0;
  BlobParams blob;
  ChargeCoupling coupling = ChargeCoupling::full;

  double total_mass() const;
  /// Spatial marginal (x, w) as an atomic measure.
  WeightedMeasure spatial_measure() const;
  /// Min over particles of |x - xi|; +inf with no particles or coupling
  /// disabled.
  double min_charge_distance() const;
};

/// Phase-space box data: uniform density of the given height on
/// {annulus or disk} x {velocity disk}. The height rule
/// height0 * eps^(-height_exponent) together with the total mass fixes the
/// velocity radius r_v = sqrt(m0 / (pi * A_x * height)); construction fails
/// if that exceeds v_max.
struct InitialDataSpec {
  double total_mass = 0.5;  // must be < 1
  Vec2 support_center{1.0, 0.0};
  double r_inner = 0.0;  // 0 gives a disk, > 0 an annulus
  double r_outer = 0.5;
  double exclusion_radius = 0.4;  // required clearance from xi0
  double v_max = 2.0;
  std::size_t particle_count = 1000;
  double height0 = 1.0;
  double height_exponent = 1.0;
  enum class Sampling { grid, stratified } sampling = Sampling::grid;
  std::uint64_t seed = 0;

  friend bool operator==(const InitialDataSpec&,
                         const InitialDataSpec&) = default;
};

/// ||f0||_inf under the spec's height rule.
double initial_height(const InitialDataSpec& spec, double eps);
/// Velocity support radius implied by the height rule.
double velocity_radius(const InitialDataSpec& spec, double eps);

/// Phase-space quadrature of the uniform box data: polar cells in x and in v,
/// nodes at cell centroids (grid) or jittered inside their cell (stratified).
/// Weights are the exact cell masses, renormalized so they sum to total_mass.
/// The spatial node stream does not depend on eps, so the spatial marginal is
/// identical across an eps sweep with a fixed seed. Throws
/// std::invalid_argument for infeasible geometry (empty support, support
/// closer to xi0 than the exclusion radius, r_v > v_max, mass >= 1).
VPState sample_initial_data(const InitialDataSpec& spec, double eps, Vec2 xi0,
                            Vec2 eta0, double gamma,
                            BlobParams blob = BlobParams::blob(0.05));

/// One splitting step of size dt:
///   (a) half kick of v by (E + L)/eps and of eta by gamma E(xi)/eps with
///       fields at current positions,
///   (b) exact magnetic rotation of v by dt/eps^2 (eta by gamma dt/eps^2)
///       composed with the exact position drift along the rotation arc,
///   (c) half kick with fields re-evaluated at the new positions.
/// The particle-particle field uses the state blob; the particle-charge
/// interaction is sharp in both directions. Throws NearCollisionError when a
/// particle-charge distance falls below 1e-10 and BlowupError on non-finite
/// state. dt should resolve the gyroangle (dt <= c_rot eps^2 in production
/// configs).
void step(VPState& state, double dt);

/// Substep (b) of step, exposed for exactness checks: field-free rotation of
/// every v by dt/eps^2 (eta by gamma dt/eps^2) composed with the closed-form
/// arc drift of x (and xi). Preserves every |v| and |eta| up to rounding and
/// does not advance state.t.
void rotate_drift(VPState& state, double dt);

/// Called at every recorded sample with the current state.
using Observer = std::function<void(const VPState&)>;

/// Recorded samples of one run: full particle snapshots plus the charge
/// track, enough to reconstruct the state at any recorded time.
struct Trajectory {
  double eps = 1.0;
  double gamma = 1.0;
  double dt = 0.0;
  BlobParams blob;
  ChargeCoupling coupling = ChargeCoupling::full;
  std::size_t stride = 1;
  std::vector<double> weights;

  std::vector<double> times;
  std::vector<std::vector<Vec2>> positions;
  std::vector<std::vector<Vec2>> velocities;
  std::vector<Vec2> xi;
  std::vector<Vec2> eta;
  VPState final_state;

  std::size_t samples() const { return times.size(); }
  VPState state_at(std::size_t k) const;
  WeightedMeasure spatial_measure_at(std::size_t k) const;
  /// Index of the recorded time nearest to t; throws std::out_of_range when t
  /// lies outside the recorded range (tolerance dt/2).
  std::size_t nearest_sample(double t) const;
};

/// Advances the state to t_end with fixed steps of dt (the last step is
/// shortened to land on t_end exactly). Samples are recorded, and observers
/// invoked, at t = start, every `stride`-th step, every capture time hit by a
/// step boundary (within 1e-9), and t_end. t_end == state.t returns an empty
/// series and the unchanged state. Step errors propagate with the failing
/// time attached.
Trajectory run(VPState state, double t_end, double dt, std::size_t stride,
               const std::vector<Observer>& observers = {},
               std::span<const double> capture_times = {});

}  // namespace gyrovp

#endif  // GYROVP_VP_SIM_HPP
