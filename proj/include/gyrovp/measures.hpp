#ifndef GYROVP_MEASURES_HPP
#define GYROVP_MEASURES_HPP

#include <span>

#include "gyrovp/measure.hpp"
#include "gyrovp/test_function.hpp"

namespace gyrovp {

/// Symmetrized interaction kernel
///   (x - y)^perp / |x - y|^2 . (grad phi(x) - grad phi(y)),
/// extended by 0 on the diagonal. Bounded by 2 ||hessian||_inf via the mean
/// value theorem even though each factor alone is singular.
double h_phi_pair(const TestFunction& phi, Vec2 x, Vec2 y);

/// (1/2) sum_{i,j} w_i m_j H_phi(x_i, y_j), coincident pairs contributing 0.
/// Parallelized over the outer index; the reduction over per-row subtotals is
/// serial in index order, so the value does not depend on the thread count.
double h_phi_bilinear(const TestFunction& phi, const WeightedMeasure& rho,
                      const WeightedMeasure& mu);

/// Both sides of the weak identity
///   <div(E^perp rho), phi> = -H_phi[rho, rho]:
/// lhs sums -E_delta^perp(x_i) . grad phi(x_i) with the self-atom excluded,
/// rhs is -h_phi_bilinear(phi, rho, rho) (always sharp). With delta_blob = 0
/// the two sides agree identically by antisymmetry; with delta_blob > 0 they
/// differ by the regularization error, which shrinks under refinement.
struct SymmetrizationCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
SymmetrizationCheck symmetrization_check(const TestFunction& phi,
                                         const WeightedMeasure& rho,
                                         double delta_blob);

/// max over dictionary functions of |integral phi d(a - b)|. A metric on
/// atomic measures of equal mass, used as the computable stand-in for a
/// negative-order dual distance.
double dual_norm_distance(const WeightedMeasure& a, const WeightedMeasure& b,
                          const TestDictionary& dict);

/// sup over candidate centers (the supplied list plus every atom position) of
/// rho(closed ball of radius r). Requires 0 < r < 1/2 and a nonempty center
/// list; throws std::invalid_argument otherwise.
double concentration_modulus(const WeightedMeasure& rho, double r,
                             std::span<const Vec2> centers);

}  // namespace gyrovp

#endif  // GYROVP_MEASURES_HPP
