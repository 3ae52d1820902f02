#include "gyrovp/test_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gyrovp {

void TestFunction::sample_norms(int n_r, int n_theta, double safety) {
  DerivativeNorms n;
  const Vec2 c = support_center();
  const double R = support_radius();
  auto visit = [&](Vec2 x) {
    n.value = std::max(n.value, std::abs(value(x)));
    n.gradient = std::max(n.gradient, gradient(x).norm());
    n.hessian = std::max(n.hessian, hessian(x).sym_spectral_norm());
    n.third = std::max(n.third, third(x).max_abs());
  };
  visit(c);
  for (int i = 1; i <= n_r; ++i) {
    const double r = R * i / n_r;
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * std::numbers::pi * (j + 0.37) / n_theta;
      visit(c + r * Vec2{std::cos(th), std::sin(th)});
    }
  }
  n.value *= safety;
  n.gradient *= safety;
  n.hessian *= safety;
  n.third *= safety;
  norms_ = n;
}

void TestFunction::scale_norms(double factor) {
  norms_.value *= factor;
  norms_.gradient *= factor;
  norms_.hessian *= factor;
  norms_.third *= factor;
}

// ---------------------------------------------------------------------------
// RadialBump: amplitude (1 - u)^4 with u = |x - c|^2 / R^2.
// With phi(s) the profile as a function of s = |z|^2:
//   grad  = 2 phi' z
//   hess  = 2 phi' I + 4 phi'' z x z
//   d_ijk = 4 phi'' (d_ij z_k + d_ik z_j + d_jk z_i) + 8 phi''' z_i z_j z_k

RadialBump::RadialBump(Vec2 center, double radius, double amplitude)
    : center_(center), radius_(radius), amplitude_(amplitude) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(amplitude))
    throw std::invalid_argument("radial bump: radius must be finite and > 0");
  sample_norms();
}

RadialBump RadialBump::normalized_w3(Vec2 center, double radius) {
  RadialBump b(center, radius, 1.0);
  const double factor = 1.0 / b.w3_norm();
  b.amplitude_ *= factor;
  b.scale_norms(factor);
  return b;
}

double RadialBump::value(Vec2 x) const {
  const double u = (x - center_).norm2() / (radius_ * radius_);
  if (u >= 1.0) return 0.0;
  const double q = 1.0 - u;
  const double q2 = q * q;
  return amplitude_ * q2 * q2;
}

Vec2 RadialBump::gradient(Vec2 x) const {
  const Vec2 z = x - center_;
  const double R2 = radius_ * radius_;
  const double u = z.norm2() / R2;
  if (u >= 1.0) return {0.0, 0.0};
  const double q = 1.0 - u;
  const double dphi = -4.0 * amplitude_ * q * q * q / R2;
  return z * (2.0 * dphi);
}

Mat2 RadialBump::hessian(Vec2 x) const {
  const Vec2 z = x - center_;
  const double R2 = radius_ * radius_;
  const double u = z.norm2() / R2;
  if (u >= 1.0) return {};
  const double q = 1.0 - u;
  const double dphi = -4.0 * amplitude_ * q * q * q / R2;
  const double ddphi = 12.0 * amplitude_ * q * q / (R2 * R2);
  Mat2 h = Mat2::identity() * (2.0 * dphi);
  h += Mat2::outer(z, z) * (4.0 * ddphi);
  return h;
}

ThirdDerivs RadialBump::third(Vec2 x) const {
  const Vec2 z = x - center_;
  const double R2 = radius_ * radius_;
  const double u = z.norm2() / R2;
  if (u >= 1.0) return {};
  const double q = 1.0 - u;
  const double ddphi = 12.0 * amplitude_ * q * q / (R2 * R2);
  const double dddphi = -24.0 * amplitude_ * q / (R2 * R2 * R2);
  ThirdDerivs t;
  t.d111 = 12.0 * ddphi * z.x + 8.0 * dddphi * z.x * z.x * z.x;
  t.d112 = 4.0 * ddphi * z.y + 8.0 * dddphi * z.x * z.x * z.y;
  t.d122 = 4.0 * ddphi * z.x + 8.0 * dddphi * z.x * z.y * z.y;
  t.d222 = 12.0 * ddphi * z.y + 8.0 * dddphi * z.y * z.y * z.y;
  return t;
}

// ---------------------------------------------------------------------------
// QuadraticPlateau: p(z) (c0 + b.z + z.Qz/2) times a C^3 radial cutoff built
// from the seventh-order smoothstep S with S(0)=1, S(1)=0 and three vanishing
// derivatives at both ends:
//   S(t)    = 1 - t^4 (35 - 84 t + 70 t^2 - 20 t^3)
//   S'(t)   = -140 t^3 (1-t)^3
//   S''(t)  = -420 t^2 (1-t)^2 (1-2t)
//   S'''(t) = -840 t (1-t) (1 - 5t + 5t^2)

QuadraticPlateau::QuadraticPlateau(Vec2 center, double c0, Vec2 b,
                                   Mat2 q_symmetric, double plateau_radius,
                                   double support_radius)
    : center_(center),
      c0_(c0),
      b_(b),
      q_(q_symmetric),
      r_inner_(plateau_radius),
      r_outer_(support_radius) {
  if (!(plateau_radius > 0.0) || !(support_radius > plateau_radius))
    throw std::invalid_argument(
        "quadratic plateau: need 0 < plateau_radius < support_radius");
  // Only the symmetric part of Q is meaningful.
  const double off = 0.5 * (q_.xy + q_.yx);
  q_.xy = q_.yx = off;
  sample_norms();
}

QuadraticPlateau::Cutoff QuadraticPlateau::cutoff(double r) const {
  if (r <= r_inner_) return {1.0, 0.0, 0.0, 0.0};
  if (r >= r_outer_) return {0.0, 0.0, 0.0, 0.0};
  const double width = r_outer_ - r_inner_;
  const double t = (r - r_inner_) / width;
  const double omt = 1.0 - t;
  Cutoff c;
  c.c = 1.0 - t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
  c.c1 = -140.0 * t * t * t * omt * omt * omt / width;
  c.c2 = -420.0 * t * t * omt * omt * (1.0 - 2.0 * t) / (width * width);
  c.c3 = -840.0 * t * omt * (1.0 - 5.0 * t + 5.0 * t * t) /
         (width * width * width);
  return c;
}

double QuadraticPlateau::value(Vec2 x) const {
  const Vec2 z = x - center_;
  const double r = z.norm();
  if (r >= r_outer_) return 0.0;
  const double p = c0_ + b_.dot(z) + 0.5 * z.dot(q_ * z);
  return p * cutoff(r).c;
}

Vec2 QuadraticPlateau::gradient(Vec2 x) const {
  const Vec2 z = x - center_;
  const double r = z.norm();
  if (r >= r_outer_) return {0.0, 0.0};
  const double p = c0_ + b_.dot(z) + 0.5 * z.dot(q_ * z);
  const Vec2 dp = b_ + q_ * z;
  const Cutoff c = cutoff(r);
  if (c.c1 == 0.0) return dp * c.c;
  const Vec2 n = z / r;
  return dp * c.c + n * (p * c.c1);
}

Mat2 QuadraticPlateau::hessian(Vec2 x) const {
  const Vec2 z = x - center_;
  const double r = z.norm();
  if (r >= r_outer_) return {};
  const double p = c0_ + b_.dot(z) + 0.5 * z.dot(q_ * z);
  const Vec2 dp = b_ + q_ * z;
  const Cutoff c = cutoff(r);
  Mat2 h = q_ * c.c;
  if (c.c1 == 0.0 && c.c2 == 0.0) return h;
  const Vec2 n = z / r;
  const Mat2 nn = Mat2::outer(n, n);
  const Mat2 chess = nn * c.c2 + (Mat2::identity() - nn) * (c.c1 / r);
  h += Mat2::outer(dp, n) * c.c1 + Mat2::outer(n, dp) * c.c1 + chess * p;
  return h;
}

ThirdDerivs QuadraticPlateau::third(Vec2 x) const {
  const Vec2 z = x - center_;
  const double r = z.norm();
  if (r >= r_outer_ || r <= r_inner_) return {};  // polynomial part is quadratic
  const double p = c0_ + b_.dot(z) + 0.5 * z.dot(q_ * z);
  const Cutoff c = cutoff(r);
  const double n[2] = {z.x / r, z.y / r};
  const double dp[2] = {b_.x + q_.xx * z.x + q_.xy * z.y,
                        b_.y + q_.yx * z.x + q_.yy * z.y};
  const double q[2][2] = {{q_.xx, q_.xy}, {q_.yx, q_.yy}};

  // Cutoff derivative tensors (radial function away from the origin).
  double c1t[2], c2t[2][2], c3t[2][2][2];
  const double tang = c.c1 / r;            // tangential second-derivative factor
  const double tang3 = c.c2 / r - c.c1 / (r * r);
  for (int i = 0; i < 2; ++i) {
    c1t[i] = c.c1 * n[i];
    for (int j = 0; j < 2; ++j) {
      const double dij = (i == j) ? 1.0 : 0.0;
      c2t[i][j] = c.c2 * n[i] * n[j] + tang * (dij - n[i] * n[j]);
      for (int k = 0; k < 2; ++k) {
        const double dik = (i == k) ? 1.0 : 0.0;
        const double djk = (j == k) ? 1.0 : 0.0;
        c3t[i][j][k] =
            c.c3 * n[i] * n[j] * n[k] +
            tang3 * (dij * n[k] + dik * n[j] + djk * n[i] -
                     3.0 * n[i] * n[j] * n[k]);
      }
    }
  }

  // Leibniz for the third derivative of p * chi; p has zero third derivative.
  double t[2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        t[i][j][k] = q[i][j] * c1t[k] + q[i][k] * c1t[j] + q[j][k] * c1t[i] +
                     dp[i] * c2t[j][k] + dp[j] * c2t[i][k] + dp[k] * c2t[i][j] +
                     p * c3t[i][j][k];

  return {t[0][0][0], t[0][0][1], t[0][1][1], t[1][1][1]};
}

// ---------------------------------------------------------------------------

TestDictionary TestDictionary::bump_grid(const DictionaryParams& params) {
  if (params.nx < 1 || params.ny < 1)
    throw std::invalid_argument("dictionary: grid must have >= 1 cell per axis");
  if (!(params.hi.x > params.lo.x) || !(params.hi.y > params.lo.y))
    throw std::invalid_argument("dictionary: empty grid extent");
  if (params.widths.empty())
    throw std::invalid_argument("dictionary: widths list is empty");
  for (double w : params.widths)
    if (!(w > 0.0))
      throw std::invalid_argument("dictionary: widths must be > 0");

  TestDictionary dict;
  dict.params_ = params;
  const Vec2 span = params.hi - params.lo;
  for (double width : params.widths) {
    for (int iy = 0; iy < params.ny; ++iy) {
      for (int ix = 0; ix < params.nx; ++ix) {
        const Vec2 c = params.lo + Vec2{span.x * (ix + 0.5) / params.nx,
                                        span.y * (iy + 0.5) / params.ny};
        dict.fns_.push_back(
            std::make_shared<RadialBump>(RadialBump::normalized_w3(c, width)));
      }
    }
  }
  return dict;
}

}  // namespace gyrovp
