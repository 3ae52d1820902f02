#include "gyrovp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "gyrovp/error.hpp"
#include "gyrovp/fields.hpp"
#include "gyrovp/measures.hpp"

namespace gyrovp {

namespace {

bool charge_active(const VPState& state) {
  return state.coupling != ChargeCoupling::disabled;
}

// Plasma-plasma log interaction with the diagonal skipped by index, so two
// distinct particles at the same point are still singular in sharp mode.
double plasma_log_interaction(const VPState& state) {
  const double d2 = state.blob.delta * state.blob.delta;
  const auto& ps = state.particles;
  double total = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (j == i) continue;
      const double r2 = (ps[i].x - ps[j].x).norm2();
      if (r2 == 0.0 && state.blob.sharp())
        throw SingularityError(
            "log interaction of coincident particles in sharp mode");
      row += ps[j].w * 0.5 * std::log(r2 + d2);
    }
    total += ps[i].w * row;
  }
  return total;
}

}  // namespace

double energy(const VPState& state) {
  double kinetic = 0.0;
  for (const auto& p : state.particles) kinetic += p.w * p.v.norm2();
  double e = 0.5 * kinetic - 0.5 * plasma_log_interaction(state);
  if (charge_active(state)) {
    e += 0.5 * state.charge.eta.norm2();
    const WeightedMeasure point =
        WeightedMeasure::dirac(state.charge.xi, 1.0);
    e -= state.charge.gamma *
         log_interaction_energy(state.spatial_measure(), point,
                                BlobParams::sharp_mode(),
                                /*skip_diagonal=*/false);
  }
  return e;
}

double momentum(const VPState& state) {
  const double eps = state.eps;
  double total = 0.0;
  for (const auto& p : state.particles)
    total += p.w * (p.x.norm2() + 2.0 * eps * p.x.dot(p.v.perp()));
  if (charge_active(state)) {
    const auto& c = state.charge;
    total += c.gamma * c.xi.norm2() + 2.0 * eps * c.xi.dot(c.eta.perp());
  }
  return total;
}

VirialRecord virial_monitor(const VPState& state) {
  VirialRecord r;
  r.min_distance = std::numeric_limits<double>::infinity();
  const Vec2 xi = state.charge.xi;
  for (const auto& p : state.particles) {
    const double d = (p.x - xi).norm();
    r.mass_weighted_distance += p.w * d;
    r.inverse_distance += p.w / d;
    r.min_distance = std::min(r.min_distance, d);
  }
  r.field_at_charge =
      coulomb_field(state.spatial_measure(), xi, BlobParams::sharp_mode())
          .norm();
  return r;
}

void GridSpec::validate() const {
  if (nx == 0 || ny == 0)
    throw std::invalid_argument("grid needs at least one cell per axis");
  if (!(std::isfinite(lo.x) && std::isfinite(lo.y) && std::isfinite(hi.x) &&
        std::isfinite(hi.y) && hi.x > lo.x && hi.y > lo.y))
    throw std::invalid_argument("grid box must be finite with hi > lo");
}

std::size_t GridSpec::cell_of(Vec2 x) const {
  validate();
  const auto clamp_index = [](double frac, std::size_t n) {
    if (!(frac > 0.0)) return std::size_t{0};
    const double floor = std::floor(frac);
    if (floor >= static_cast<double>(n - 1)) return n - 1;
    return static_cast<std::size_t>(floor);
  };
  const std::size_t ix =
      clamp_index((x.x - lo.x) / (hi.x - lo.x) * static_cast<double>(nx), nx);
  const std::size_t iy =
      clamp_index((x.y - lo.y) / (hi.y - lo.y) * static_cast<double>(ny), ny);
  return iy * nx + ix;
}

const Mat2& DefectProxy::cell(std::size_t ix, std::size_t iy) const {
  if (ix >= grid.nx || iy >= grid.ny)
    throw std::out_of_range("cell index outside the grid");
  return cells[iy * grid.nx + ix];
}

std::vector<double> DefectProxy::off_diagonal() const {
  std::vector<double> out(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) out[c] = cells[c].xy;
  return out;
}

std::vector<double> DefectProxy::difference() const {
  std::vector<double> out(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
    out[c] = cells[c].yy - cells[c].xx;
  return out;
}

double DefectProxy::off_diagonal_l1() const {
  double total = 0.0;
  for (const auto& m : cells) total += std::abs(m.xy);
  return total;
}

double DefectProxy::difference_l1() const {
  double total = 0.0;
  for (const auto& m : cells) total += std::abs(m.yy - m.xx);
  return total;
}

double DefectProxy::trace_total() const {
  double total = 0.0;
  for (const auto& m : cells) total += m.trace();
  return total;
}

Mat2 DefectProxy::isotropic_part(const Mat2& m) {
  return Mat2::identity() * (0.5 * m.trace());
}

Mat2 DefectProxy::traceless_part(const Mat2& m) {
  const Mat2 iso = isotropic_part(m);
  return {m.xx - iso.xx, m.xy, m.yx, m.yy - iso.yy};
}

DefectProxy second_moment_tensor(const VPState& state, const GridSpec& grid) {
  grid.validate();
  DefectProxy d;
  d.grid = grid;
  d.cells.assign(grid.cells(), Mat2{});
  for (const auto& p : state.particles)
    d.cells[grid.cell_of(p.x)] += Mat2::outer(p.v, p.v) * p.w;
  const Vec2 eta = state.charge.eta;
  d.charge_a = eta.x * eta.y;
  d.charge_b = 0.5 * (eta.y * eta.y - eta.x * eta.x);
  return d;
}

std::vector<double> angular_moment(
    const VPState& state, const std::function<double(Vec2)>& phi_circle,
    const GridSpec& grid) {
  grid.validate();
  if (!phi_circle)
    throw std::invalid_argument("angular test function must be callable");
  std::vector<double> out(grid.cells(), 0.0);
  for (const auto& p : state.particles) {
    const double n2 = p.v.norm2();
    if (n2 == 0.0) continue;
    const Vec2 unit = p.v * (1.0 / std::sqrt(n2));
    out[grid.cell_of(p.x)] += p.w * phi_circle(unit) * n2;
  }
  return out;
}

namespace {

double anisotropy_term(const TestFunction& phi, Vec2 y, Vec2 u) {
  const Mat2 h = phi.hessian(y);
  return h.xy * (u.x * u.x - u.y * u.y) + (h.yy - h.xx) * u.x * u.y;
}

}  // namespace

double weak_form_residual(const Trajectory& traj, const TestFunction& phi,
                          double t) {
  const std::size_t k_end = traj.nearest_sample(t);
  const bool charged = traj.coupling != ChargeCoupling::disabled;
  const double gamma = traj.gamma;

  const auto pairing = [&](std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < traj.weights.size(); ++i)
      s += traj.weights[i] * phi.value(traj.positions[k][i]);
    if (charged) s += gamma * phi.value(traj.xi[k]);
    return s;
  };

  const auto generator = [&](std::size_t k) {
    WeightedMeasure mu = traj.spatial_measure_at(k);
    if (charged) mu.add(traj.xi[k], gamma);
    double g = h_phi_bilinear(phi, mu, mu);
    for (std::size_t i = 0; i < traj.weights.size(); ++i)
      g += traj.weights[i] *
           anisotropy_term(phi, traj.positions[k][i], traj.velocities[k][i]);
    if (charged) g += anisotropy_term(phi, traj.xi[k], traj.eta[k]);
    return g;
  };

  const double lhs = pairing(k_end) - pairing(0);
  double integral = 0.0;
  double prev = generator(0);
  for (std::size_t k = 0; k < k_end; ++k) {
    const double next = generator(k + 1);
    integral += 0.5 * (traj.times[k + 1] - traj.times[k]) * (prev + next);
    prev = next;
  }
  return lhs - integral;
}

double charge_field_time_integral(const Trajectory& traj, double s, double t) {
  if (!(s <= t))
    throw std::invalid_argument("integration range must satisfy s <= t");
  const std::size_t ks = traj.nearest_sample(s);
  const std::size_t kt = traj.nearest_sample(t);
  if (ks == kt) return 0.0;
  const auto field_norm = [&](std::size_t k) {
    return coulomb_field(traj.spatial_measure_at(k), traj.xi[k],
                         BlobParams::sharp_mode())
        .norm();
  };
  double acc = 0.0;
  double prev = field_norm(ks);
  for (std::size_t k = ks; k < kt; ++k) {
    const double next = field_norm(k + 1);
    acc += 0.5 * (traj.times[k + 1] - traj.times[k]) * (prev + next);
    prev = next;
  }
  return acc;
}

double holder_statistic(std::span<const double> times,
                        std::span<const Vec2> xi, double eps) {
  if (times.size() != xi.size())
    throw std::invalid_argument("times and positions must align");
  if (times.size() < 2)
    throw std::invalid_argument(
        "the Holder statistic needs at least two samples");
  const double floor = std::cbrt(eps);
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    for (std::size_t j = i + 1; j < times.size(); ++j) {
      const double dt = times[j] - times[i];
      if (!(dt > 0.0)) continue;
      best = std::max(best,
                      (xi[j] - xi[i]).norm() / (std::sqrt(dt) + floor));
    }
  }
  return best;
}

double holder_statistic(const Trajectory& traj) {
  return holder_statistic(traj.times, traj.xi, traj.eps);
}

const std::vector<double>& TimeSeries::channel(const std::string& name) const {
  for (const auto& [key, values] : channels)
    if (key == name) return values;
  throw std::out_of_range("no diagnostic channel named '" + name + "'");
}

bool TimeSeries::has_channel(const std::string& name) const {
  for (const auto& [key, values] : channels)
    if (key == name) return true;
  return false;
}

TimeSeries diagnostics_series(const Trajectory& traj,
                              std::span<const double> conc_radii,
                              std::span<const Vec2> conc_centers) {
  TimeSeries ts;
  ts.times = traj.times;
  const std::size_t n = traj.samples();
  std::vector<double> h(n), momentum_values(n), mass(n), field(n), min_d(n),
      i_abs(n), inv_d(n);
  std::vector<std::vector<double>> conc(conc_radii.size(),
                                        std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const VPState state = traj.state_at(k);
    h[k] = energy(state);
    momentum_values[k] = momentum(state);
    mass[k] = state.total_mass();
    const VirialRecord vr = virial_monitor(state);
    field[k] = vr.field_at_charge;
    min_d[k] = vr.min_distance;
    i_abs[k] = vr.mass_weighted_distance;
    inv_d[k] = vr.inverse_distance;
    if (!conc_radii.empty()) {
      const WeightedMeasure rho = state.spatial_measure();
      std::vector<Vec2> centers(conc_centers.begin(), conc_centers.end());
      if (centers.empty()) centers.push_back(state.charge.xi);
      for (std::size_t ri = 0; ri < conc_radii.size(); ++ri)
        conc[ri][k] = concentration_modulus(rho, conc_radii[ri], centers);
    }
  }
  ts.channels.emplace_back("H", std::move(h));
  ts.channels.emplace_back("I", std::move(momentum_values));
  ts.channels.emplace_back("mass", std::move(mass));
  ts.channels.emplace_back("E_at_xi_norm", std::move(field));
  ts.channels.emplace_back("min_dist", std::move(min_d));
  ts.channels.emplace_back("I_abs", std::move(i_abs));
  ts.channels.emplace_back("inv_dist", std::move(inv_d));
  for (std::size_t ri = 0; ri < conc_radii.size(); ++ri) {
    char name[64];
    std::snprintf(name, sizeof name, "conc_r%g", conc_radii[ri]);
    ts.channels.emplace_back(name, std::move(conc[ri]));
  }
  return ts;
}

}  // namespace gyrovp
