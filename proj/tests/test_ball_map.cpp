#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polysphere/ball_map.hpp"
#include "polysphere/verify.hpp"

using namespace polysphere;

namespace {

Vec3 random_ball_point(std::uint64_t seed, long j, double rmax) {
  while (true) {
    const Vec3 p(2.0 * uniform01(seed, 3 * j) - 1.0,
                 2.0 * uniform01(seed, 3 * j + 1) - 1.0,
                 2.0 * uniform01(seed, 3 * j + 2) - 1.0);
    if (p.norm() <= 1.0) return rmax * p;
    j += 1000003;  // deterministic re-draw
  }
}

}  // namespace

TEST_CASE("admissible epsilons reproduce the published roots") {
  {
    const auto e = admissible_epsilons(3);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == 0.0);
    CHECK(std::abs(e[1] - 0.105226) < 5e-5);
  }
  {
    const auto e = admissible_epsilons(4);
    REQUIRE(e.size() == 3);
    CHECK(std::abs(e[1] - 0.20861) < 5e-5);
    CHECK(std::abs(e[2] - 0.59139) < 5e-5);
  }
  {
    const auto e = admissible_epsilons(5);
    REQUIRE(e.size() == 3);
    CHECK(std::abs(e[1] - 0.297912) < 5e-5);
    CHECK(std::abs(e[2] - 0.502088) < 5e-5);
  }
  for (int n = 6; n <= 12; ++n) {
    CAPTURE(n);
    const auto e = admissible_epsilons(n);
    CHECK(e == std::vector<double>{0.0});
    CHECK_THROWS_AS(smallest_positive_admissible(n), NotAdmissible);
  }
  CHECK(smallest_positive_admissible(4) == doctest::Approx(0.20861).epsilon(1e-4));
}

TEST_CASE("VolumeSpec: scaling identity and admissibility flag") {
  for (int n : {3, 4, 5, 6}) {
    for (double eps : admissible_epsilons(n)) {
      const VolumeSpec v(n, 1.0, eps);
      CHECK(v.admissible);
      CHECK(v.xi * v.xi * v.xi * v.gamma == doctest::Approx(v.beta).epsilon(1e-14));
      // positive admissible roots are exactly the tangent-sphere shapes
      CHECK(tangent_sphere_check(v) == (eps > 0.0));
    }
  }
  CHECK_FALSE(VolumeSpec(4, 1.0, 0.4).admissible);
  CHECK_FALSE(VolumeSpec(6, 1.0, 0.3).admissible);
  // paper-precision truncation is accepted
  CHECK(VolumeSpec(4, 1.0, 0.20861).admissible);
  CHECK(VolumeSpec(5, 1.0, 0.502088).admissible);
  CHECK_THROWS_AS(VolumeSpec(4, 1.0, 0.7), std::invalid_argument);
}

TEST_CASE("xi at the n=4 root equals (4/pi)^(1/3)") {
  const VolumeSpec v(4, 1.0, smallest_positive_admissible(4));
  CHECK(v.xi == doctest::Approx(std::cbrt(4.0 / kPi)).epsilon(1e-14));
  CHECK(v.gamma == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-14));
}

TEST_CASE("ball <-> solid polyhedron roundtrips for all admissible pairs, n <= 5") {
  for (int n : {3, 4, 5}) {
    for (double eps : admissible_epsilons(n)) {
      CAPTURE(n);
      CAPTURE(eps);
      const VolumeSpec vspec(n, 1.0, eps);
      double worst = 0.0;
      for (long j = 0; j < 3000; ++j) {
        const Vec3 p = random_ball_point(11 + n, j, 0.999);
        const Vec3 back = poly_to_ball(ball_to_poly(p, vspec).p, vspec);
        worst = std::max(worst, (back - p).norm());
      }
      CHECK(worst < 1e-9);
      // and starting from the solid side
      worst = 0.0;
      for (long j = 0; j < 3000; ++j) {
        const Vec3 q = ball_to_poly(random_ball_point(23 + n, j, 0.999), vspec).p;
        const Vec3 fwd_back = ball_to_poly(poly_to_ball(q, vspec), vspec).p;
        worst = std::max(worst, (fwd_back - q).norm());
      }
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("shell radius is preserved: |p| equals the shell of its image") {
  const VolumeSpec vspec(4, 1.0, smallest_positive_admissible(4));
  for (long j = 0; j < 500; ++j) {
    const Vec3 p = random_ball_point(3, j, 0.99);
    const SolidPolyPoint q = ball_to_poly(p, vspec);
    CHECK(q.shell_rho == doctest::Approx(vspec.xi * p.norm()).epsilon(1e-12));
  }
}

TEST_CASE("domain guards") {
  const VolumeSpec good(4, 1.0, smallest_positive_admissible(4));
  const VolumeSpec bad(4, 1.0, 0.4);
  CHECK_THROWS_AS(ball_to_poly(Vec3(1.5, 0, 0), good), OutsideBall);
  CHECK_THROWS_AS(ball_to_poly(Vec3(0.5, 0, 0), bad), NotAdmissible);
  CHECK_NOTHROW(ball_to_poly(Vec3(0.5, 0, 0), bad, /*unchecked=*/true));
  CHECK_THROWS_AS(poly_to_ball(Vec3(0.5, 0, 0), bad), NotAdmissible);
  CHECK_THROWS_AS(poly_to_ball(Vec3(3.0, 0, 0), good), OutsidePolyhedron);
  CHECK(ball_to_poly(Vec3::Zero(), good).p.norm() == 0.0);
  CHECK(poly_to_ball(Vec3::Zero(), good).norm() == 0.0);
}

TEST_CASE("finite-difference Jacobian is 1 for admissible specs") {
  for (int n : {3, 4, 5}) {
    for (double eps : admissible_epsilons(n)) {
      CAPTURE(n);
      CAPTURE(eps);
      const VolumeSpec vspec(n, 1.0, eps);
      double worst = 0.0;
      long used = 0;
      for (long j = 0; used < 300; ++j) {
        const Vec3 p = random_ball_point(47, j, 0.9);
        if (p.norm() < 0.05) continue;
        try {
          worst = std::max(worst, std::abs(ball_jacobian_fd(vspec, p, 1e-5) - 1.0));
          ++used;
        } catch (const StepTooLarge&) {
        }
      }
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("closed-form Jacobians match finite differences off admissibility") {
  const std::pair<int, double> cases[] = {{4, 0.4}, {6, 0.3}};
  for (const auto& [n, eps] : cases) {
    CAPTURE(n);
    CAPTURE(eps);
    const VolumeSpec vspec(n, 1.0, eps);
    double worst = 0.0;
    long used = 0;
    for (long j = 0; used < 200; ++j) {
      const Vec3 p = random_ball_point(53, j, 0.9);
      if (p.norm() < 0.05) continue;
      const double closed = std::abs(p.z()) > eps * p.norm() ? jacobian_cap(vspec)
                                                             : jacobian_belt(vspec);
      try {
        worst = std::max(worst, std::abs(ball_jacobian_fd(vspec, p, 1e-5) - closed));
        ++used;
      } catch (const StepTooLarge&) {
      }
    }
    CHECK(worst < 1e-6);
    // volume-weighted average of the two cases is 1 (total volume preserved)
    const double cap_frac = 1.0 - eps;  // two polar sectors
    const double belt_frac = eps;
    CHECK(cap_frac * jacobian_cap(vspec) + belt_frac * jacobian_belt(vspec) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Jacobian stencil guard throws across region seams") {
  const VolumeSpec vspec(4, 1.0, smallest_positive_admissible(4));
  // point on the zone plane between zones 3 and 0
  CHECK_THROWS_AS(ball_jacobian_fd(vspec, Vec3(0.5, 1e-9, 0.1), 1e-5),
                  StepTooLarge);
  // point on the cap/belt cone
  const double eps = vspec.epsilon;
  const Vec3 on_cone(0.5 * std::sqrt(1.0 - eps * eps), 1e-3, 0.5 * eps);
  CHECK_THROWS_AS(ball_jacobian_fd(vspec, on_cone, 1e-5), StepTooLarge);
}

TEST_CASE("Monte Carlo volume of the image solid matches beta * r^3") {
  const VolumeSpec vspec(4, 1.0, smallest_positive_admissible(4));
  // bounding box of K_4(xi, eps): xy up to the circumradius, z up to the apex
  const double rxy = vspec.xi * kPi / (4.0 * std::sin(kPi / 4.0)) * 1.01;
  const double rz = vspec.xi * (vspec.epsilon + vspec.c_eps) * 1.01;
  auto inside = [&](const Vec3& q) {
    try {
      return poly_to_ball(q, vspec).norm() <= 1.0;
    } catch (const OutsidePolyhedron&) {
      return false;
    }
  };
  const McResult mc = monte_carlo_volume(inside, Vec3(-rxy, -rxy, -rz),
                                         Vec3(rxy, rxy, rz), 400000, 2024);
  CHECK(std::abs(mc.estimate - vspec.beta) < 3.0 * mc.stderr_);
}
