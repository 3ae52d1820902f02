#include "gyrovp/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "gyrovp/error.hpp"
#include "gyrovp/parallel.hpp"

namespace gyrovp {

namespace {
constexpr double kChargeDistanceFloor = 1e-10;
}

Vec2 coulomb_kernel(Vec2 z, double delta) {
  const double denom = z.norm2() + delta * delta;
  if (denom == 0.0)
    throw SingularityError("sharp Coulomb kernel evaluated at zero separation");
  return z / denom;
}

Vec2 coulomb_field(const WeightedMeasure& rho, Vec2 x, BlobParams blob,
                   std::optional<std::size_t> exclude) {
  const double d2 = blob.delta * blob.delta;
  const auto& pts = rho.points();
  const auto& ws = rho.weights();
  Vec2 sum{0.0, 0.0};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (exclude && *exclude == j) continue;
    const Vec2 z = x - pts[j];
    const double denom = z.norm2() + d2;
    if (denom == 0.0)
      throw SingularityError(
          "sharp field evaluated at a non-excluded atom position");
    sum += ws[j] * (z / denom);
  }
  return sum;
}

std::vector<Vec2> coulomb_field_multi(const WeightedMeasure& rho,
                                      std::span<const Vec2> points,
                                      BlobParams blob,
                                      bool exclude_same_index) {
  if (exclude_same_index && points.size() != rho.size())
    throw std::invalid_argument(
        "self-field evaluation requires one point per atom");
  std::vector<Vec2> out(points.size());
  detail::parallel_chunks(points.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = coulomb_field(
          rho, points[i], blob,
          exclude_same_index ? std::optional<std::size_t>{i} : std::nullopt);
    }
  });
  return out;
}

Vec2 charge_field(Vec2 x, Vec2 xi, double gamma) {
  const Vec2 z = x - xi;
  const double r2 = z.norm2();
  if (r2 < kChargeDistanceFloor * kChargeDistanceFloor)
    throw SingularityError("charge field evaluated below the distance floor");
  return z * (gamma / r2);
}

double log_interaction_energy(const WeightedMeasure& rho,
                              const WeightedMeasure& mu, BlobParams blob,
                              bool skip_diagonal) {
  const double d2 = blob.delta * blob.delta;
  const auto& xs = rho.points();
  const auto& ws = rho.weights();
  const auto& ys = mu.points();
  const auto& ms = mu.weights();
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const Vec2 z = xs[i] - ys[j];
      const double r2 = z.norm2();
      if (r2 == 0.0) {
        if (skip_diagonal) continue;
        if (blob.sharp())
          throw SingularityError(
              "sharp log interaction of coincident atoms without diagonal skip");
      }
      row += ms[j] * 0.5 * std::log(r2 + d2);
    }
    total += ws[i] * row;
  }
  return total;
}

}  // namespace gyrovp
