#include "gyrovp/vortex_wave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "gyrovp/error.hpp"

namespace gyrovp {

namespace {

constexpr double kCollisionFloor = 1e-10;

// Mid-stage positions can go non-finite only through a blow-up, so translate
// the measure validation into the runtime error the caller expects.
WeightedMeasure make_measure(std::vector<Vec2> pos, std::vector<double> ws,
                             double t) {
  try {
    return WeightedMeasure(std::move(pos), std::move(ws));
  } catch (const std::invalid_argument&) {
    throw BlowupError("non-finite vorticity positions", t);
  }
}

struct Rates {
  std::vector<Vec2> dx;
  Vec2 dxi;
};

Rates eval_rates(const std::vector<Vec2>& pos, const std::vector<double>& ws,
                 Vec2 xi, double gamma, BlobParams blob, double t) {
  const WeightedMeasure rho = make_measure(pos, ws, t);
  Rates r;
  r.dx.resize(pos.size());
  const std::vector<Vec2> field = coulomb_field_multi(rho, pos, blob, true);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    Vec2 u = field[i];
    if (gamma > 0.0) u += charge_field(pos[i], xi, gamma);
    r.dx[i] = u.perp();
  }
  r.dxi = rho.empty()
              ? Vec2{0.0, 0.0}
              : coulomb_field(rho, xi, BlobParams::sharp_mode()).perp();
  return r;
}

std::vector<Vec2> shifted(const std::vector<Vec2>& base,
                          const std::vector<Vec2>& dir, double scale) {
  std::vector<Vec2> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    out[i] = base[i] + dir[i] * scale;
  }
  return out;
}

void validate_step_args(const VortexState& s, double dt) {
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw std::invalid_argument("step size must be positive and finite");
  }
  if (!std::isfinite(s.gamma) || s.gamma < 0.0) {
    throw std::invalid_argument("vortex strength gamma must be >= 0");
  }
}

void check_state(const VortexState& s) {
  if (!std::isfinite(s.xi.x) || !std::isfinite(s.xi.y)) {
    throw BlowupError("non-finite charge position", s.t);
  }
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    const Vec2 p = s.rho.point(i);
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw BlowupError("non-finite vorticity position", s.t);
    }
    if (s.gamma > 0.0) {
      const double d2 = (p - s.xi).norm2();
      if (d2 < kCollisionFloor * kCollisionFloor) {
        throw NearCollisionError(std::sqrt(d2), s.t);
      }
    }
  }
}

}  // namespace

Vec2 vw_velocity(const VortexState& state, Vec2 x,
                 std::optional<std::size_t> exclude) {
  Vec2 u = coulomb_field(state.rho, x, state.blob, exclude);
  if (state.gamma > 0.0) u += charge_field(x, state.xi, state.gamma);
  return u.perp();
}

Vec2 vw_velocity_at_charge(const VortexState& state) {
  if (state.rho.empty()) return {0.0, 0.0};
  return coulomb_field(state.rho, state.xi, BlobParams::sharp_mode()).perp();
}

void vw_step(VortexState& s, double dt) {
  validate_step_args(s, dt);
  check_state(s);

  const std::vector<Vec2>& p0 = s.rho.points();
  const std::vector<double>& ws = s.rho.weights();
  const Vec2 xi0 = s.xi;

  const Rates k1 = eval_rates(p0, ws, xi0, s.gamma, s.blob, s.t);
  const Rates k2 = eval_rates(shifted(p0, k1.dx, dt / 2.0), ws,
                              xi0 + k1.dxi * (dt / 2.0), s.gamma, s.blob, s.t);
  const Rates k3 = eval_rates(shifted(p0, k2.dx, dt / 2.0), ws,
                              xi0 + k2.dxi * (dt / 2.0), s.gamma, s.blob, s.t);
  const Rates k4 = eval_rates(shifted(p0, k3.dx, dt), ws, xi0 + k3.dxi * dt,
                              s.gamma, s.blob, s.t);

  std::vector<Vec2> p_new(p0.size());
  const double sixth = dt / 6.0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    p_new[i] = p0[i] +
               (k1.dx[i] + (k2.dx[i] + k3.dx[i]) * 2.0 + k4.dx[i]) * sixth;
  }
  const Vec2 xi_new = xi0 + (k1.dxi + (k2.dxi + k3.dxi) * 2.0 + k4.dxi) * sixth;

  s.rho = make_measure(std::move(p_new), ws, s.t + dt);
  s.xi = xi_new;
  s.t += dt;
  if (!std::isfinite(s.xi.x) || !std::isfinite(s.xi.y)) {
    throw BlowupError("non-finite charge position", s.t);
  }
}

VortexState VortexTrajectory::state_at(std::size_t k) const {
  if (k >= times.size()) {
    throw std::out_of_range("trajectory sample index out of range");
  }
  VortexState s;
  s.rho = WeightedMeasure(positions[k], weights);
  s.xi = xi[k];
  s.gamma = gamma;
  s.t = times[k];
  s.blob = blob;
  return s;
}

WeightedMeasure VortexTrajectory::measure_at(std::size_t k) const {
  if (k >= times.size()) {
    throw std::out_of_range("trajectory sample index out of range");
  }
  return WeightedMeasure(positions[k], weights);
}

std::size_t VortexTrajectory::nearest_sample(double t) const {
  if (times.empty()) throw std::out_of_range("trajectory has no samples");
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  if (t < times.front() - tol || t > times.back() + tol) {
    throw std::out_of_range("time " + std::to_string(t) +
                            " outside recorded range [" +
                            std::to_string(times.front()) + ", " +
                            std::to_string(times.back()) + "]");
  }
  std::size_t best = 0;
  double best_err = std::abs(times[0] - t);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double err = std::abs(times[k] - t);
    if (err < best_err) {
      best = k;
      best_err = err;
    }
  }
  return best;
}

VortexTrajectory vw_run(VortexState state, double t_end, double dt,
                        std::size_t stride,
                        std::span<const double> capture_times) {
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw std::invalid_argument("step size must be positive and finite");
  }
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  if (!std::isfinite(t_end) || t_end < state.t - 1e-12) {
    throw std::invalid_argument("t_end must not precede the state time");
  }

  VortexTrajectory tr;
  tr.gamma = state.gamma;
  tr.dt = dt;
  tr.blob = state.blob;
  tr.stride = stride;
  tr.weights = state.rho.weights();

  auto record = [&](const VortexState& s) {
    tr.times.push_back(s.t);
    tr.positions.push_back(s.rho.points());
    tr.xi.push_back(s.xi);
  };

  const double span = t_end - state.t;
  if (span <= dt * 1e-12) {
    tr.final_state = std::move(state);
    return tr;
  }

  auto is_capture = [&](double t) {
    for (double c : capture_times) {
      if (std::abs(t - c) <= 1e-9 * std::max(1.0, std::abs(c))) return true;
    }
    return false;
  };

  record(state);
  const auto n_steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(span / dt - 1e-9)));
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const bool last = k == n_steps;
    const double h = last ? t_end - state.t : dt;
    vw_step(state, h);
    if (last) state.t = t_end;
    if (k % stride == 0 || last || is_capture(state.t)) record(state);
  }
  tr.final_state = std::move(state);
  return tr;
}

}  // namespace gyrovp
