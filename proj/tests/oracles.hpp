#ifndef GYROVP_TESTS_ORACLES_HPP
#define GYROVP_TESTS_ORACLES_HPP

// Test-only reference constructions with known closed-form answers.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gyrovp/measure.hpp"
#include "gyrovp/vec2.hpp"

namespace gyrovp::testing {

/// Uniformly spaced atoms on a circle; total mass `mass`. The exterior field
/// of the continuum ring is mass * x/|x|^2 (Gauss law); the interior field is
/// zero; an n-node ring reproduces both up to O((r</r>)^n).
inline WeightedMeasure make_ring(Vec2 center, double radius, int n,
                                 double mass) {
  std::vector<Vec2> pts;
  std::vector<double> ws(n, mass / n);
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    pts.push_back(center + radius * Vec2{std::cos(th), std::sin(th)});
  }
  return WeightedMeasure(std::move(pts), std::move(ws));
}

/// Midpoint polar-grid quadrature of the uniform disk of given total mass.
/// Ring radii sit at area centroids so each ring's weight is exact.
inline WeightedMeasure make_uniform_disk(Vec2 center, double radius, int n_r,
                                         int n_theta, double mass) {
  std::vector<Vec2> pts;
  std::vector<double> ws;
  pts.reserve(static_cast<std::size_t>(n_r) * n_theta);
  ws.reserve(pts.capacity());
  for (int i = 0; i < n_r; ++i) {
    const double r0 = radius * i / n_r;
    const double r1 = radius * (i + 1) / n_r;
    const double ring_mass = mass * (r1 * r1 - r0 * r0) / (radius * radius);
    const double rc = std::sqrt(0.5 * (r0 * r0 + r1 * r1));
    for (int k = 0; k < n_theta; ++k) {
      const double th = 2.0 * std::numbers::pi * (k + 0.5) / n_theta;
      pts.push_back(center + rc * Vec2{std::cos(th), std::sin(th)});
      ws.push_back(ring_mass / n_theta);
    }
  }
  return WeightedMeasure(std::move(pts), std::move(ws));
}

/// Stratified-jitter quadrature of the uniform disk: one node per polar cell,
/// jittered inside it, with the cell's exact mass. Unlike the centroid grid it
/// carries no rotational symmetry, so regularization errors do not cancel.
inline WeightedMeasure make_stratified_disk(Vec2 center, double radius,
                                            int n_r, int n_theta, double mass,
                                            std::uint64_t seed);

/// Exact field of a radially symmetric unit-mass distribution with cumulative
/// mass profile m(r): E(x) = m(|x|) x/|x|^2.
inline Vec2 radial_exact_field(Vec2 x, Vec2 center, double cumulative_mass) {
  const Vec2 z = x - center;
  return z * (cumulative_mass / z.norm2());
}

/// Small deterministic generator for property tests (splitmix64).
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Vec2 in_box(double half) { return {uniform(-half, half), uniform(-half, half)}; }
  Vec2 in_disk(Vec2 center, double radius) {
    const double r = radius * std::sqrt(uniform());
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    return center + r * Vec2{std::cos(th), std::sin(th)};
  }

 private:
  std::uint64_t state_;
};

inline WeightedMeasure make_stratified_disk(Vec2 center, double radius,
                                            int n_r, int n_theta, double mass,
                                            std::uint64_t seed) {
  TestRng rng(seed);
  std::vector<Vec2> pts;
  std::vector<double> ws;
  pts.reserve(static_cast<std::size_t>(n_r) * n_theta);
  ws.reserve(pts.capacity());
  for (int i = 0; i < n_r; ++i) {
    const double r0 = radius * i / n_r;
    const double r1 = radius * (i + 1) / n_r;
    const double ring_mass = mass * (r1 * r1 - r0 * r0) / (radius * radius);
    for (int k = 0; k < n_theta; ++k) {
      const double r =
          std::sqrt(r0 * r0 + (r1 * r1 - r0 * r0) * rng.uniform());
      const double th =
          2.0 * std::numbers::pi * (k + rng.uniform()) / n_theta;
      pts.push_back(center + r * Vec2{std::cos(th), std::sin(th)});
      ws.push_back(ring_mass / n_theta);
    }
  }
  return WeightedMeasure(std::move(pts), std::move(ws));
}

/// Random atomic measure supported in a disk.
inline WeightedMeasure random_measure(TestRng& rng, int n, Vec2 center,
                                      double radius, double mass) {
  WeightedMeasure m;
  std::vector<double> raw(n);
  double s = 0.0;
  for (auto& w : raw) {
    w = 0.1 + rng.uniform();
    s += w;
  }
  for (int i = 0; i < n; ++i)
    m.add(rng.in_disk(center, radius), raw[i] / s * mass);
  return m;
}

}  // namespace gyrovp::testing

#endif  // GYROVP_TESTS_ORACLES_HPP
