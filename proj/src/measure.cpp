#include "gyrovp/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gyrovp {

namespace {

void validate_atom(Vec2 p, double w) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y))
    throw std::invalid_argument("measure atom position is not finite");
  if (!std::isfinite(w) || w <= 0.0)
    throw std::invalid_argument("measure atom weight must be finite and > 0");
}

}  // namespace

WeightedMeasure::WeightedMeasure(std::vector<Vec2> points,
                                 std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size())
    throw std::invalid_argument("measure: points/weights size mismatch");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    validate_atom(points_[i], weights_[i]);
    mass_ += weights_[i];
  }
}

WeightedMeasure WeightedMeasure::dirac(Vec2 position, double weight) {
  WeightedMeasure m;
  m.add(position, weight);
  return m;
}

void WeightedMeasure::add(Vec2 position, double weight) {
  validate_atom(position, weight);
  points_.push_back(position);
  weights_.push_back(weight);
  mass_ += weight;
}

}  // namespace gyrovp
