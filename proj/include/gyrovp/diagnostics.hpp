#ifndef GYROVP_DIAGNOSTICS_HPP
#define GYROVP_DIAGNOSTICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gyrovp/measure.hpp"
#include "gyrovp/test_function.hpp"
#include "gyrovp/vec2.hpp"
#include "gyrovp/vp_sim.hpp"

namespace gyrovp {

/// Total energy of a state:
///   1/2 sum w|v|^2 + 1/2 |eta|^2
///   - 1/2 double-sum w w ln(|x_i - x_j|^2 + delta^2)^(1/2)   (diagonal skipped)
///   - gamma sum w ln|x - xi|                                  (always sharp)
/// The plasma-plasma term uses the state blob. Charge terms are dropped when
/// the coupling is disabled. Conserved by the exact dynamics; the splitting
/// preserves it to second order in dt. Throws SingularityError for a
/// coincident particle-charge pair in the sharp term.
double energy(const VPState& state);

/// Conserved momentum-like functional
///   sum w (|x|^2 + 2 eps x . v^perp) + gamma |xi|^2 + 2 eps xi . eta^perp,
/// charge terms dropped when the coupling is disabled. The splitting
/// conserves this exactly (to rounding): kicks cancel pairwise and the
/// rotation-drift substep is the exact flow of a subsystem that preserves it.
double momentum(const VPState& state);

/// Scalar ingredients of the virial-style estimates.
struct VirialRecord {
  double mass_weighted_distance = 0.0;  // sum w |x - xi|
  double inverse_distance = 0.0;        // sum w / |x - xi|
  double field_at_charge = 0.0;         // |E(xi)|, sharp summation
  double min_distance = 0.0;            // min |x - xi|
};
VirialRecord virial_monitor(const VPState& state);

/// Axis-aligned binning grid. Cells are half-open in both coordinates;
/// positions outside the box are clamped into the boundary cells so binned
/// channels always partition the full particle set.
struct GridSpec {
  Vec2 lo{-1.0, -1.0};
  Vec2 hi{1.0, 1.0};
  std::size_t nx = 1;
  std::size_t ny = 1;

  std::size_t cells() const { return nx * ny; }
  /// Row-major cell index of position x (clamped). Throws
  /// std::invalid_argument for a degenerate grid.
  std::size_t cell_of(Vec2 x) const;
  void validate() const;
};

/// Binned second velocity moments: per cell M = sum w v (x) v over the
/// particles in the cell, plus the charge anisotropy scalars
/// a = eta1 eta2 and b = (eta2^2 - eta1^2)/2.
struct DefectProxy {
  GridSpec grid;
  std::vector<Mat2> cells;  // row-major, one tensor per grid cell
  double charge_a = 0.0;
  double charge_b = 0.0;

  const Mat2& cell(std::size_t ix, std::size_t iy) const;
  /// Per-cell off-diagonal channel sum w v1 v2 (row-major).
  std::vector<double> off_diagonal() const;
  /// Per-cell difference channel sum w (v2^2 - v1^2) (row-major).
  std::vector<double> difference() const;
  /// L1 aggregates of the two anisotropy channels over cells.
  double off_diagonal_l1() const;
  double difference_l1() const;
  /// Sum of cell traces; equals sum w |v|^2 up to summation order.
  double trace_total() const;
  /// Isotropic / traceless split of one cell tensor.
  static Mat2 isotropic_part(const Mat2& m);
  static Mat2 traceless_part(const Mat2& m);
};

/// Bins sum w v (x) v by particle position. Throws std::invalid_argument for
/// a degenerate grid.
DefectProxy second_moment_tensor(const VPState& state, const GridSpec& grid);

/// Per-cell sum of w phi(v/|v|) |v|^2 (row-major); particles with v = 0
/// contribute nothing. With phi == 1 this is the trace channel of
/// second_moment_tensor.
std::vector<double> angular_moment(const VPState& state,
                                   const std::function<double(Vec2)>& phi_circle,
                                   const GridSpec& grid);

/// Residual of the symmetrized weak formulation between the first recorded
/// sample and the one nearest to t:
///   [sum w phi(x) + gamma phi(xi)](t) - [same](0)
///   - integral of { H_phi[mu, mu] + sum w B(x, v) + B(xi, eta) } ds
/// where mu = rho + gamma delta_xi and
///   B(y, u) = phi_12(y)(u1^2 - u2^2) + (phi_22 - phi_11)(y) u1 u2.
/// Time integration is trapezoid over the recorded samples, so the result is
/// O(eps) + O(recording-quadrature). Charge terms are dropped when the
/// coupling is disabled. Throws std::out_of_range when t lies outside the
/// recorded range.
double weak_form_residual(const Trajectory& traj, const TestFunction& phi,
                          double t);

/// Trapezoid integral of |E(xi)| (sharp summation) between the recorded
/// samples nearest to s and t. Throws std::out_of_range outside the recorded
/// range and std::invalid_argument when s > t.
double charge_field_time_integral(const Trajectory& traj, double s, double t);

/// max over sample pairs s < t of |xi(t) - xi(s)| / (sqrt(t - s) + eps^(1/3)).
/// Requires at least 2 samples (std::invalid_argument otherwise).
double holder_statistic(std::span<const double> times,
                        std::span<const Vec2> xi, double eps);
double holder_statistic(const Trajectory& traj);

/// Sampled diagnostic channels of one run; times strictly increase and every
/// channel has one value per time.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::pair<std::string, std::vector<double>>> channels;

  const std::vector<double>& channel(const std::string& name) const;
  bool has_channel(const std::string& name) const;
};

/// Evaluates the standard channels on every recorded sample: H, I, mass,
/// E_at_xi_norm, min_dist, I_abs, inv_dist, and one conc_r<r> channel per
/// requested radius (concentration_modulus over the given centers plus all
/// atom positions).
TimeSeries diagnostics_series(const Trajectory& traj,
                              std::span<const double> conc_radii,
                              std::span<const Vec2> conc_centers);

}  // namespace gyrovp

#endif  // GYROVP_DIAGNOSTICS_HPP
