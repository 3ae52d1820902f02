#include "gyrovp/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "gyrovp/fields.hpp"
#include "gyrovp/parallel.hpp"

namespace gyrovp {

double h_phi_pair(const TestFunction& phi, Vec2 x, Vec2 y) {
  const Vec2 z = x - y;
  const double s = z.norm2();
  if (s == 0.0) return 0.0;
  return z.perp().dot(phi.gradient(x) - phi.gradient(y)) / s;
}

double h_phi_bilinear(const TestFunction& phi, const WeightedMeasure& rho,
                      const WeightedMeasure& mu) {
  const auto& xs = rho.points();
  const auto& ws = rho.weights();
  const auto& ys = mu.points();
  const auto& ms = mu.weights();

  std::vector<Vec2> gx(xs.size()), gy(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) gx[i] = phi.gradient(xs[i]);
  for (std::size_t j = 0; j < ys.size(); ++j) gy[j] = phi.gradient(ys[j]);

  // Row subtotals filled independently, then reduced in index order so the
  // value is the same at every thread count.
  std::vector<double> rows(xs.size(), 0.0);
  detail::parallel_chunks(xs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const Vec2 z = xs[i] - ys[j];
        const double s = z.norm2();
        if (s == 0.0) continue;
        row += ms[j] * (z.perp().dot(gx[i] - gy[j]) / s);
      }
      rows[i] = ws[i] * row;
    }
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return 0.5 * total;
}

SymmetrizationCheck symmetrization_check(const TestFunction& phi,
                                         const WeightedMeasure& rho,
                                         double delta_blob) {
  if (!(delta_blob >= 0.0) || !std::isfinite(delta_blob))
    throw std::invalid_argument("symmetrization check: bad blob delta");
  const auto field = coulomb_field_multi(rho, rho.points(),
                                         BlobParams{delta_blob}, true);
  double lhs = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    lhs -= rho.weight(i) * field[i].perp().dot(phi.gradient(rho.point(i)));
  return {lhs, -h_phi_bilinear(phi, rho, rho)};
}

double dual_norm_distance(const WeightedMeasure& a, const WeightedMeasure& b,
                          const TestDictionary& dict) {
  double best = 0.0;
  for (const auto& phi : dict.functions()) {
    double ia = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      ia += a.weight(i) * phi->value(a.point(i));
    double ib = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j)
      ib += b.weight(j) * phi->value(b.point(j));
    best = std::max(best, std::abs(ia - ib));
  }
  return best;
}

double concentration_modulus(const WeightedMeasure& rho, double r,
                             std::span<const Vec2> centers) {
  if (!(r > 0.0) || !(r < 0.5))
    throw std::invalid_argument("concentration modulus: need 0 < r < 1/2");
  if (centers.empty())
    throw std::invalid_argument("concentration modulus: empty center list");

  const double r2 = r * r;
  const auto& pts = rho.points();
  const auto& ws = rho.weights();
  const std::size_t n_candidates = centers.size() + pts.size();
  std::vector<double> ball_mass(n_candidates, 0.0);
  detail::parallel_chunks(n_candidates, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const Vec2 center =
          c < centers.size() ? centers[c] : pts[c - centers.size()];
      double m = 0.0;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if ((pts[j] - center).norm2() <= r2) m += ws[j];
      ball_mass[c] = m;
    }
  });
  double best = 0.0;
  for (double m : ball_mass) best = std::max(best, m);
  return best;
}

}  // namespace gyrovp
