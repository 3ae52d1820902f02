#ifndef GYROVP_MEASURE_HPP
#define GYROVP_MEASURE_HPP

#include <cstddef>
#include <vector>

#include "gyrovp/vec2.hpp"

namespace gyrovp {

/// Finite nonnegative atomic measure on the plane: a list of
/// (position, weight > 0) atoms. Atom order is part of the value; every
/// summation over atoms runs in index order so results are reproducible.
class WeightedMeasure {
 public:
  WeightedMeasure() = default;

  /// Throws std::invalid_argument on size mismatch, non-finite data, or
  /// weights <= 0.
  WeightedMeasure(std::vector<Vec2> points, std::vector<double> weights);

  static WeightedMeasure dirac(Vec2 position, double weight);

  /// Appends one atom; same validity rules as the constructor.
  void add(Vec2 position, double weight);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  Vec2 point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Sum of weights, accumulated in atom order.
  double total_mass() const { return mass_; }

 private:
  std::vector<Vec2> points_;
  std::vector<double> weights_;
  double mass_ = 0.0;
};

}  // namespace gyrovp

#endif  // GYROVP_MEASURE_HPP
