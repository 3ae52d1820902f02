#include "gyrovp/vp_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "gyrovp/error.hpp"

namespace gyrovp {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Particle-charge separations below this abort the run: the repulsive
// dynamics keeps a positive distance, so a breach signals numerical failure.
constexpr double kCollisionFloor = 1e-10;

// splitmix64: tiny, seedable, and identical on every platform, which keeps
// sampled data byte-reproducible across toolchains.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct PolarCells {
  std::size_t n_r = 1;
  std::size_t n_t = 1;
};

// Split n nodes into radial rings and angular sectors with roughly square
// cells for an annulus of the given radii.
PolarCells polar_layout(std::size_t n, double r_inner, double r_outer) {
  PolarCells c;
  const double width = r_outer - r_inner;
  const double mean_circumference = kPi * (r_inner + r_outer);
  const double ratio = width / std::max(mean_circumference, 1e-12);
  const double ideal = std::sqrt(static_cast<double>(n) * ratio);
  c.n_r = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(ideal)));
  c.n_t = std::max<std::size_t>(1, (n + c.n_r - 1) / c.n_r);
  return c;
}

// Equal-area ring boundaries: squared radii interpolate linearly.
double ring_boundary(double r_lo, double r_hi, std::size_t k, std::size_t n) {
  const double s = static_cast<double>(k) / static_cast<double>(n);
  return std::sqrt(r_lo * r_lo + (r_hi * r_hi - r_lo * r_lo) * s);
}

std::vector<Vec2> positions_of(const VPState& s) {
  std::vector<Vec2> xs;
  xs.reserve(s.particles.size());
  for (const auto& p : s.particles) xs.push_back(p.x);
  return xs;
}

void check_separation(const VPState& s) {
  if (s.coupling == ChargeCoupling::disabled) return;
  for (const auto& p : s.particles) {
    const double d2 = (p.x - s.charge.xi).norm2();
    if (d2 < kCollisionFloor * kCollisionFloor) {
      throw NearCollisionError(std::sqrt(d2), s.t);
    }
  }
}

void check_finite(const VPState& s) {
  auto bad = [](const Vec2& u) {
    return !std::isfinite(u.x) || !std::isfinite(u.y);
  };
  for (const auto& p : s.particles) {
    if (bad(p.x) || bad(p.v)) throw BlowupError("non-finite particle state", s.t);
  }
  if (s.coupling != ChargeCoupling::disabled &&
      (bad(s.charge.xi) || bad(s.charge.eta))) {
    throw BlowupError("non-finite charge state", s.t);
  }
}

// Half kick: v += (dt/2)(E + L)/eps with fields frozen at current positions;
// with full coupling, eta += (dt/2) gamma E(xi)/eps. The plasma-plasma field
// uses the state blob; the plasma-charge interaction is sharp both ways.
void half_kick(VPState& s, double dt) {
  const double scale = dt / (2.0 * s.eps);
  const WeightedMeasure rho = s.spatial_measure();
  const std::vector<Vec2> xs = positions_of(s);
  const std::vector<Vec2> field = coulomb_field_multi(rho, xs, s.blob, true);

  const bool charged = s.coupling != ChargeCoupling::disabled;
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    Vec2 force = field[i];
    if (charged) {
      force += charge_field(s.particles[i].x, s.charge.xi, s.charge.gamma);
    }
    s.particles[i].v += force * scale;
  }

  if (s.coupling == ChargeCoupling::full && !s.particles.empty()) {
    const Vec2 e_xi = coulomb_field(rho, s.charge.xi, BlobParams::sharp_mode());
    s.charge.eta += e_xi * (s.charge.gamma * scale);
  }
}

}  // namespace

double VPState::total_mass() const {
  double sum = 0.0;
  for (const auto& p : particles) sum += p.w;
  return sum;
}

WeightedMeasure VPState::spatial_measure() const {
  std::vector<Vec2> xs;
  std::vector<double> ws;
  xs.reserve(particles.size());
  ws.reserve(particles.size());
  for (const auto& p : particles) {
    xs.push_back(p.x);
    ws.push_back(p.w);
  }
  return WeightedMeasure(std::move(xs), std::move(ws));
}

double VPState::min_charge_distance() const {
  if (coupling == ChargeCoupling::disabled || particles.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : particles) {
    best = std::min(best, (p.x - charge.xi).norm());
  }
  return best;
}

double initial_height(const InitialDataSpec& spec, double eps) {
  return spec.height0 * std::pow(eps, -spec.height_exponent);
}

double velocity_radius(const InitialDataSpec& spec, double eps) {
  const double area_x =
      kPi * (spec.r_outer * spec.r_outer - spec.r_inner * spec.r_inner);
  return std::sqrt(spec.total_mass /
                   (kPi * area_x * initial_height(spec, eps)));
}

VPState sample_initial_data(const InitialDataSpec& spec, double eps, Vec2 xi0,
                            Vec2 eta0, double gamma, BlobParams blob) {
  if (!(spec.total_mass > 0.0) || !(spec.total_mass < 1.0)) {
    throw std::invalid_argument("total_mass must lie in (0,1)");
  }
  if (!(spec.r_inner >= 0.0) || !(spec.r_outer > spec.r_inner)) {
    throw std::invalid_argument("support requires 0 <= r_inner < r_outer");
  }
  if (!(spec.exclusion_radius > 0.0)) {
    throw std::invalid_argument("exclusion_radius must be positive");
  }
  if (!(spec.v_max > 0.0) || !(spec.height0 > 0.0)) {
    throw std::invalid_argument("v_max and height0 must be positive");
  }
  if (spec.particle_count < 1) {
    throw std::invalid_argument("particle_count must be at least 1");
  }
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0,1)");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("charge strength gamma must be positive");
  }

  // Clearance of the support set from xi0.
  const double center_dist = (spec.support_center - xi0).norm();
  double clearance = 0.0;
  if (center_dist >= spec.r_outer) {
    clearance = center_dist - spec.r_outer;
  } else if (center_dist <= spec.r_inner) {
    clearance = spec.r_inner - center_dist;
  }
  if (clearance < spec.exclusion_radius - 1e-12) {
    throw std::invalid_argument(
        "support set comes closer to xi0 than the exclusion radius (clearance " +
        std::to_string(clearance) + ")");
  }

  const double r_v = velocity_radius(spec, eps);
  if (r_v > spec.v_max + 1e-12) {
    throw std::invalid_argument(
        "height rule implies velocity radius " + std::to_string(r_v) +
        " exceeding v_max " + std::to_string(spec.v_max));
  }

  // Velocity nodes per spatial cell, then the spatial cell count.
  const std::size_t pc = spec.particle_count;
  const std::size_t n_v = pc >= 512 ? 16 : pc >= 128 ? 8 : pc >= 16 ? 4 : 1;
  const std::size_t n_x = (pc + n_v - 1) / n_v;
  const PolarCells cx = polar_layout(n_x, spec.r_inner, spec.r_outer);
  const std::size_t n_vr = n_v >= 16 ? 2 : 1;
  const std::size_t n_vt = n_v / n_vr;

  const bool jitter = spec.sampling == InitialDataSpec::Sampling::stratified;
  SplitMix64 rng_space(spec.seed);
  SplitMix64 rng_vel(spec.seed ^ 0x6a09e667f3bcc909ULL);

  VPState state;
  state.eps = eps;
  state.t = 0.0;
  state.blob = blob;
  state.coupling = ChargeCoupling::full;
  state.charge = {xi0, eta0, gamma};
  state.particles.reserve(cx.n_r * cx.n_t * n_vr * n_vt);

  const double w0 = spec.total_mass /
                    static_cast<double>(cx.n_r * cx.n_t * n_vr * n_vt);

  for (std::size_t kr = 0; kr < cx.n_r; ++kr) {
    const double r0 = ring_boundary(spec.r_inner, spec.r_outer, kr, cx.n_r);
    const double r1 = ring_boundary(spec.r_inner, spec.r_outer, kr + 1, cx.n_r);
    for (std::size_t kt = 0; kt < cx.n_t; ++kt) {
      double u_r = 0.5;
      double u_t = 0.5;
      if (jitter) {
        u_r = rng_space.uniform();
        u_t = rng_space.uniform();
      }
      const double rx =
          std::sqrt(r0 * r0 + (r1 * r1 - r0 * r0) * u_r);
      const double tx =
          2.0 * kPi * (static_cast<double>(kt) + u_t) / static_cast<double>(cx.n_t);
      const Vec2 x = spec.support_center + Vec2{rx * std::cos(tx), rx * std::sin(tx)};

      for (std::size_t mr = 0; mr < n_vr; ++mr) {
        // Velocity ring boundaries in units of r_v so the random stream is
        // consumed identically for every eps.
        const double s0 = ring_boundary(0.0, 1.0, mr, n_vr);
        const double s1 = ring_boundary(0.0, 1.0, mr + 1, n_vr);
        for (std::size_t mt = 0; mt < n_vt; ++mt) {
          double u_vr = 0.5;
          double u_vt = 0.5;
          if (jitter) {
            u_vr = rng_vel.uniform();
            u_vt = rng_vel.uniform();
          }
          const double sv = std::sqrt(s0 * s0 + (s1 * s1 - s0 * s0) * u_vr);
          const double tv = 2.0 * kPi * (static_cast<double>(mt) + u_vt) /
                            static_cast<double>(n_vt);
          const Vec2 v = Vec2{sv * std::cos(tv), sv * std::sin(tv)} * r_v;
          state.particles.push_back({x, v, w0});
        }
      }
    }
  }

  // Renormalize so the total mass is exactly the requested one (up to one
  // final rounding), regardless of cell-count rounding.
  double sum = 0.0;
  for (const auto& p : state.particles) sum += p.w;
  const double scale = spec.total_mass / sum;
  for (auto& p : state.particles) p.w *= scale;

  return state;
}

void rotate_drift(VPState& s, double dt) {
  const double eps = s.eps;
  const double theta = dt / (eps * eps);
  const double sn = std::sin(theta);
  const double cs = std::cos(theta);
  const double half = std::sin(theta / 2.0);
  const double om = 2.0 * half * half;  // 1 - cos(theta), cancellation-free

  for (auto& p : s.particles) {
    const Vec2 v0 = p.v;
    p.x += (v0 * sn + v0.perp() * om) * eps;
    p.v = {cs * v0.x - sn * v0.y, sn * v0.x + cs * v0.y};
  }

  if (s.coupling == ChargeCoupling::full) {
    const double gamma = s.charge.gamma;
    const double thc = gamma * dt / (eps * eps);
    const double snc = std::sin(thc);
    const double csc = std::cos(thc);
    const double halfc = std::sin(thc / 2.0);
    const double omc = 2.0 * halfc * halfc;
    const Vec2 e0 = s.charge.eta;
    s.charge.xi += (e0 * snc + e0.perp() * omc) * (eps / gamma);
    s.charge.eta = {csc * e0.x - snc * e0.y, snc * e0.x + csc * e0.y};
  }
}

void step(VPState& s, double dt) {
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw std::invalid_argument("step size must be positive and finite");
  }
  if (!std::isfinite(s.eps) || !(s.eps > 0.0)) {
    throw std::invalid_argument("state eps must be positive and finite");
  }
  if (s.coupling != ChargeCoupling::disabled && !(s.charge.gamma > 0.0)) {
    throw std::invalid_argument("charge strength gamma must be positive");
  }

  check_finite(s);
  check_separation(s);
  half_kick(s, dt);
  rotate_drift(s, dt);
  check_separation(s);
  half_kick(s, dt);
  s.t += dt;
  check_finite(s);
}

VPState Trajectory::state_at(std::size_t k) const {
  if (k >= times.size()) {
    throw std::out_of_range("trajectory sample index out of range");
  }
  VPState s;
  s.eps = eps;
  s.t = times[k];
  s.blob = blob;
  s.coupling = coupling;
  s.charge = {xi[k], eta[k], gamma};
  const auto& xs = positions[k];
  const auto& vs = velocities[k];
  s.particles.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s.particles.push_back({xs[i], vs[i], weights[i]});
  }
  return s;
}

WeightedMeasure Trajectory::spatial_measure_at(std::size_t k) const {
  if (k >= times.size()) {
    throw std::out_of_range("trajectory sample index out of range");
  }
  return WeightedMeasure(positions[k], weights);
}

std::size_t Trajectory::nearest_sample(double t) const {
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

Trajectory run(VPState state, double t_end, double dt, std::size_t stride,
               const std::vector<Observer>& observers,
               std::span<const double> capture_times) {
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw std::invalid_argument("step size must be positive and finite");
  }
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  if (!std::isfinite(t_end) || t_end < state.t - 1e-12) {
    throw std::invalid_argument("t_end must not precede the state time");
  }

  Trajectory tr;
  tr.eps = state.eps;
  tr.gamma = state.charge.gamma;
  tr.dt = dt;
  tr.blob = state.blob;
  tr.coupling = state.coupling;
  tr.stride = stride;
  tr.weights.reserve(state.particles.size());
  for (const auto& p : state.particles) tr.weights.push_back(p.w);

  auto record = [&](const VPState& s) {
    tr.times.push_back(s.t);
    std::vector<Vec2> xs;
    std::vector<Vec2> vs;
    xs.reserve(s.particles.size());
    vs.reserve(s.particles.size());
    for (const auto& p : s.particles) {
      xs.push_back(p.x);
      vs.push_back(p.v);
    }
    tr.positions.push_back(std::move(xs));
    tr.velocities.push_back(std::move(vs));
    tr.xi.push_back(s.charge.xi);
    tr.eta.push_back(s.charge.eta);
    for (const auto& obs : observers) obs(s);
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
  const auto n_steps = static_cast<std::size_t>(
      std::max(1.0, std::ceil(span / dt - 1e-9)));
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const bool last = k == n_steps;
    const double h = last ? t_end - state.t : dt;
    step(state, h);
    if (last) state.t = t_end;
    if (k % stride == 0 || last || is_capture(state.t)) record(state);
  }
  tr.final_state = std::move(state);
  return tr;
}

}  // namespace gyrovp
