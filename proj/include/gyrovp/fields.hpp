#ifndef GYROVP_FIELDS_HPP
#define GYROVP_FIELDS_HPP

#include <optional>
#include <span>
#include <vector>

#include "gyrovp/measure.hpp"
#include "gyrovp/vec2.hpp"

namespace gyrovp {

/// Regularization of the Coulomb kernel. delta == 0 is sharp mode (kernel
/// z/|z|^2, evaluation at a coincident atom is an error unless excluded);
/// delta > 0 is blob mode (kernel z/(|z|^2 + delta^2), smooth everywhere).
struct BlobParams {
  double delta = 0.0;

  constexpr bool sharp() const { return delta == 0.0; }
  static constexpr BlobParams sharp_mode() { return {0.0}; }
  static constexpr BlobParams blob(double delta) { return {delta}; }
};

/// Coulomb kernel z/(|z|^2 + delta^2); exactly antisymmetric in z. Sharp
/// evaluation at z = 0 throws SingularityError.
Vec2 coulomb_kernel(Vec2 z, double delta);

/// Field of rho at x: sum over atoms j (skipping `exclude`) of
/// w_j K_delta(x - x_j), accumulated in atom order.
Vec2 coulomb_field(const WeightedMeasure& rho, Vec2 x, BlobParams blob,
                   std::optional<std::size_t> exclude = std::nullopt);

/// Field of rho at many points. With exclude_same_index set, points must be
/// rho's own atom positions and point i skips atom i (self-field). May run on
/// worker threads; each output element is computed by exactly one thread in
/// atom order, so results do not depend on the thread count.
std::vector<Vec2> coulomb_field_multi(const WeightedMeasure& rho,
                                      std::span<const Vec2> points,
                                      BlobParams blob,
                                      bool exclude_same_index = false);

/// Repulsive point-charge field gamma (x - xi)/|x - xi|^2. Never regularized;
/// throws SingularityError when |x - xi| < 1e-10.
Vec2 charge_field(Vec2 x, Vec2 xi, double gamma);

/// Sum over atom pairs of w_i m_j ln(|x_i - y_j|^2 + delta^2)^(1/2),
/// accumulated in (i, j) order with per-row subtotals. skip_diagonal drops
/// exactly coincident pairs; sharp evaluation of a coincident pair without the
/// skip throws SingularityError.
double log_interaction_energy(const WeightedMeasure& rho,
                              const WeightedMeasure& mu, BlobParams blob,
                              bool skip_diagonal);

}  // namespace gyrovp

#endif  // GYROVP_FIELDS_HPP
