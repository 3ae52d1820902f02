#ifndef GYROVP_TEST_FUNCTION_HPP
#define GYROVP_TEST_FUNCTION_HPP

#include <algorithm>
#include <memory>
#include <vector>

#include "gyrovp/vec2.hpp"

namespace gyrovp {

/// Symmetric third-derivative tensor of a scalar field on the plane; the
/// component only depends on how many indices equal the second coordinate.
struct ThirdDerivs {
  double d111 = 0.0;
  double d112 = 0.0;
  double d122 = 0.0;
  double d222 = 0.0;

  /// i, j, k in {0, 1}.
  double component(int i, int j, int k) const {
    switch (i + j + k) {
      case 0: return d111;
      case 1: return d112;
      case 2: return d122;
      default: return d222;
    }
  }
  double max_abs() const {
    return std::max({std::abs(d111), std::abs(d112), std::abs(d122),
                     std::abs(d222)});
  }
};

/// Sup norms of a test function and its derivatives over the plane:
/// gradient in the Euclidean norm, Hessian in the spectral norm, third
/// derivatives as the largest component. Reported values are sampled on a
/// dense polar grid and inflated by a small safety factor, so they dominate
/// any coarser sampling.
struct DerivativeNorms {
  double value = 0.0;
  double gradient = 0.0;
  double hessian = 0.0;
  double third = 0.0;

  double w3() const { return std::max({value, gradient, hessian, third}); }
};

/// C^3 test function with compact support: the value and all provided
/// derivatives vanish for |x - support_center| >= support_radius.
class TestFunction {
 public:
  virtual ~TestFunction() = default;

  virtual double value(Vec2 x) const = 0;
  virtual Vec2 gradient(Vec2 x) const = 0;
  /// Symmetric.
  virtual Mat2 hessian(Vec2 x) const = 0;
  virtual ThirdDerivs third(Vec2 x) const = 0;

  virtual Vec2 support_center() const = 0;
  virtual double support_radius() const = 0;

  const DerivativeNorms& norms() const { return norms_; }
  double w3_norm() const { return norms_.w3(); }

 protected:
  /// Fills norms_ by sampling this function on an n_r x n_theta polar grid
  /// over the support disk (plus the center) and inflating by `safety`.
  /// Concrete constructors call this once the geometry is fixed.
  void sample_norms(int n_r = 600, int n_theta = 96, double safety = 1.03);

  /// Rescales cached norms; for subclasses whose value is linear in an
  /// amplitude parameter.
  void scale_norms(double factor);

  DerivativeNorms norms_;
};

/// amplitude * (1 - |x - c|^2 / R^2)^4 inside the disk of radius R, zero
/// outside; C^3 across the boundary.
class RadialBump final : public TestFunction {
 public:
  RadialBump(Vec2 center, double radius, double amplitude = 1.0);

  /// Bump rescaled so the reported W^{3,inf} norm is 1.
  static RadialBump normalized_w3(Vec2 center, double radius);

  double value(Vec2 x) const override;
  Vec2 gradient(Vec2 x) const override;
  Mat2 hessian(Vec2 x) const override;
  ThirdDerivs third(Vec2 x) const override;
  Vec2 support_center() const override { return center_; }
  double support_radius() const override { return radius_; }
  double amplitude() const { return amplitude_; }

 private:
  Vec2 center_;
  double radius_;
  double amplitude_;
};

/// Quadratic polynomial c0 + b.(x-c) + (x-c).Q(x-c)/2 multiplied by a C^3
/// radial cutoff that is exactly 1 on |x - c| <= plateau_radius and 0 on
/// |x - c| >= support_radius. Inside the plateau the function and its
/// derivatives are exactly those of the polynomial.
class QuadraticPlateau final : public TestFunction {
 public:
  QuadraticPlateau(Vec2 center, double c0, Vec2 b, Mat2 q_symmetric,
                   double plateau_radius, double support_radius);

  double value(Vec2 x) const override;
  Vec2 gradient(Vec2 x) const override;
  Mat2 hessian(Vec2 x) const override;
  ThirdDerivs third(Vec2 x) const override;
  Vec2 support_center() const override { return center_; }
  double support_radius() const override { return r_outer_; }
  double plateau_radius() const { return r_inner_; }

 private:
  /// Cutoff profile and radial derivatives up to third order at radius r.
  struct Cutoff {
    double c, c1, c2, c3;
  };
  Cutoff cutoff(double r) const;

  Vec2 center_;
  double c0_;
  Vec2 b_;
  Mat2 q_;
  double r_inner_;
  double r_outer_;
};

/// Deterministic family of W^{3,inf}-normalized radial bumps on a rectangular
/// grid of centers, one bump per (center, width) pair.
struct DictionaryParams {
  Vec2 lo{-2.0, -2.0};
  Vec2 hi{2.0, 2.0};
  int nx = 5;
  int ny = 5;
  std::vector<double> widths{1.0, 2.0};

  friend bool operator==(const DictionaryParams&,
                         const DictionaryParams&) = default;
};

class TestDictionary {
 public:
  /// Throws std::invalid_argument on a degenerate grid or nonpositive widths.
  static TestDictionary bump_grid(const DictionaryParams& params);

  std::size_t size() const { return fns_.size(); }
  const std::vector<std::shared_ptr<const TestFunction>>& functions() const {
    return fns_;
  }
  const DictionaryParams& params() const { return params_; }

 private:
  std::vector<std::shared_ptr<const TestFunction>> fns_;
  DictionaryParams params_;
};

}  // namespace gyrovp

#endif  // GYROVP_TEST_FUNCTION_HPP
