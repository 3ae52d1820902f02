#include "gyrovp/fields.hpp"

#include <doctest.h>

#include <cmath>

#include "gyrovp/error.hpp"
#include "gyrovp/parallel.hpp"
#include "oracles.hpp"

using namespace gyrovp;
using gyrovp::testing::TestRng;

TEST_CASE("coulomb kernel is exactly antisymmetric in floating point") {
  TestRng rng(7001);
  for (int k = 0; k < 200; ++k) {
    const Vec2 z = rng.in_box(3.0);
    for (double delta : {0.0, 0.05, 0.3}) {
      const Vec2 a = coulomb_kernel(z, delta);
      const Vec2 b = coulomb_kernel(-z, delta);
      CHECK(a.x == -b.x);
      CHECK(a.y == -b.y);
    }
  }
}

TEST_CASE("sharp kernel at the singularity throws") {
  CHECK_THROWS_AS(coulomb_kernel({0.0, 0.0}, 0.0), SingularityError);
  // Blob mode is smooth through the origin and vanishes there.
  const Vec2 v = coulomb_kernel({0.0, 0.0}, 0.1);
  CHECK(v.x == 0.0);
  CHECK(v.y == 0.0);
}

TEST_CASE("field of a unit point mass") {
  const auto rho = WeightedMeasure::dirac({0.0, 0.0}, 1.0);
  SUBCASE("sharp: x/|x|^2") {
    const Vec2 e = coulomb_field(rho, {2.0, 0.0}, BlobParams::sharp_mode());
    CHECK(e.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.y == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("blob: |E| = |x|/(|x|^2 + delta^2)") {
    const Vec2 x{0.3, 0.4};  // |x| = 0.5
    const Vec2 e = coulomb_field(rho, x, BlobParams::blob(0.1));
    CHECK(e.norm() == doctest::Approx(0.5 / 0.26).epsilon(1e-14));
  }
  SUBCASE("sharp evaluation at the atom throws unless excluded") {
    CHECK_THROWS_AS(coulomb_field(rho, {0.0, 0.0}, BlobParams::sharp_mode()),
                    SingularityError);
    const Vec2 e =
        coulomb_field(rho, {0.0, 0.0}, BlobParams::sharp_mode(), std::size_t{0});
    CHECK(e.x == 0.0);
    CHECK(e.y == 0.0);
  }
}

TEST_CASE("ring quadrature matches the Gauss-law field") {
  const auto ring = testing::make_ring({0.0, 0.0}, 0.5, 256, 1.0);
  SUBCASE("exterior, on axis") {
    const Vec2 e = coulomb_field(ring, {2.0, 0.0}, BlobParams::sharp_mode());
    CHECK(std::abs(e.x - 0.5) <= 1e-6);
    CHECK(std::abs(e.y) <= 1e-6);
  }
  SUBCASE("exterior, generic points at |x| >= 2 ring radii") {
    TestRng rng(7002);
    for (int k = 0; k < 50; ++k) {
      const double r = rng.uniform(1.0, 4.0);
      const double th = rng.uniform(0.0, 6.28);
      const Vec2 x = r * Vec2{std::cos(th), std::sin(th)};
      const Vec2 e = coulomb_field(ring, x, BlobParams::sharp_mode());
      const Vec2 exact = testing::radial_exact_field(x, {0.0, 0.0}, 1.0);
      CHECK((e - exact).norm() <= 1e-6);
    }
  }
  SUBCASE("interior field vanishes") {
    const Vec2 e = coulomb_field(ring, {0.1, 0.05}, BlobParams::sharp_mode());
    CHECK(e.norm() <= 1e-6);
  }
}

TEST_CASE("uniform-disk quadrature matches the radial mass profile") {
  const double R = 0.5;
  const auto disk = testing::make_uniform_disk({0.0, 0.0}, R, 120, 256, 1.0);
  SUBCASE("exterior sees the whole mass") {
    const Vec2 x{0.8, 0.0};
    const Vec2 e = coulomb_field(disk, x, BlobParams::sharp_mode());
    CHECK((e - testing::radial_exact_field(x, {0.0, 0.0}, 1.0)).norm() <= 1e-4);
  }
  SUBCASE("interior sees the enclosed mass") {
    const Vec2 x{0.25, 0.0};
    const double enclosed = (0.25 * 0.25) / (R * R);
    const Vec2 e = coulomb_field(disk, x, BlobParams::sharp_mode());
    CHECK((e - testing::radial_exact_field(x, {0.0, 0.0}, enclosed)).norm() <=
          2e-3);
  }
}

TEST_CASE("charge field") {
  const Vec2 e = charge_field({1.0, 0.0}, {0.0, 0.0}, 2.0);
  CHECK(e.x == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.y == 0.0);
  // Repulsive: points from xi toward x.
  const Vec2 f = charge_field({0.0, -3.0}, {0.0, -1.0}, 1.0);
  CHECK(f.y < 0.0);
  CHECK_THROWS_AS(charge_field({1.0, 1.0}, {1.0, 1.0}, 1.0), SingularityError);
  CHECK_THROWS_AS(charge_field({1.0 + 1e-11, 1.0}, {1.0, 1.0}, 1.0),
                  SingularityError);
}

TEST_CASE("log interaction energy") {
  SUBCASE("single sharp pair at distance e") {
    const auto rho = WeightedMeasure::dirac({std::exp(1.0), 0.0}, 1.0);
    const auto mu = WeightedMeasure::dirac({0.0, 0.0}, 1.0);
    const double v =
        log_interaction_energy(rho, mu, BlobParams::sharp_mode(), false);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("blob pair") {
    const auto rho = WeightedMeasure::dirac({1.0, 0.0}, 2.0);
    const auto mu = WeightedMeasure::dirac({0.0, 0.0}, 3.0);
    const double delta = 0.05;
    const double v =
        log_interaction_energy(rho, mu, BlobParams::blob(delta), false);
    CHECK(v == doctest::Approx(6.0 * 0.5 * std::log(1.0 + delta * delta))
                   .epsilon(1e-14));
  }
  SUBCASE("identical single atoms: diagonal skip gives zero") {
    const auto rho = WeightedMeasure::dirac({0.4, -0.7}, 1.3);
    CHECK(log_interaction_energy(rho, rho, BlobParams::sharp_mode(), true) ==
          0.0);
  }
  SUBCASE("sharp coincident pair without skip throws") {
    const auto rho = WeightedMeasure::dirac({0.4, -0.7}, 1.3);
    CHECK_THROWS_AS(
        log_interaction_energy(rho, rho, BlobParams::sharp_mode(), false),
        SingularityError);
  }
  SUBCASE("symmetry under swapping the arguments") {
    TestRng rng(7003);
    auto a = testing::random_measure(rng, 17, {0.0, 0.0}, 1.0, 0.8);
    auto b = testing::random_measure(rng, 23, {0.5, 0.2}, 1.5, 0.6);
    const double ab =
        log_interaction_energy(a, b, BlobParams::blob(0.05), false);
    const double ba =
        log_interaction_energy(b, a, BlobParams::blob(0.05), false);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
  }
}

TEST_CASE("multi-point field agrees with per-point calls and thread count") {
  TestRng rng(7004);
  const auto rho = testing::random_measure(rng, 300, {0.0, 0.0}, 1.0, 0.9);
  const auto blob = BlobParams::blob(0.05);

  const auto self1 = coulomb_field_multi(rho, rho.points(), blob, true);
  for (std::size_t i = 0; i < rho.size(); i += 37) {
    const Vec2 e = coulomb_field(rho, rho.point(i), blob, i);
    CHECK(self1[i].x == e.x);
    CHECK(self1[i].y == e.y);
  }

  set_worker_threads(4);
  const auto self4 = coulomb_field_multi(rho, rho.points(), blob, true);
  set_worker_threads(1);
  REQUIRE(self4.size() == self1.size());
  for (std::size_t i = 0; i < self1.size(); ++i) {
    CHECK(self1[i].x == self4[i].x);
    CHECK(self1[i].y == self4[i].y);
  }
}

TEST_CASE("Newton cancellation: weighted self-field sums to zero") {
  TestRng rng(7005);
  const auto rho = testing::random_measure(rng, 500, {0.3, -0.2}, 1.0, 0.9);
  for (double delta : {0.05, 0.0}) {
    const auto field =
        coulomb_field_multi(rho, rho.points(), BlobParams{delta}, true);
    Vec2 total{0.0, 0.0};
    for (std::size_t i = 0; i < rho.size(); ++i)
      total += rho.weight(i) * field[i];
    CHECK(total.norm() <= 1e-10);
  }
}
