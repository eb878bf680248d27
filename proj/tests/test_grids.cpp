#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "polysphere/grids.hpp"
#include "polysphere/sphere_map.hpp"
#include "polysphere/verify.hpp"

using namespace polysphere;

TEST_CASE("epsilon_for and the validity domain") {
  CHECK(epsilon_for(1) == doctest::Approx(0.5));
  CHECK(epsilon_for(2) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(epsilon_for(0), std::invalid_argument);
  // p = 1 is valid for every n >= 3; p = 2 only for n = 3
  for (int n = 3; n <= 8; ++n) CHECK_NOTHROW(build_surface_grid(n, 1, 1));
  CHECK_NOTHROW(build_surface_grid(3, 2, 1));
  CHECK_THROWS_AS(build_surface_grid(4, 2, 1), InvalidEpsilon);
  CHECK_THROWS_AS(build_surface_grid(3, 9, 1), InvalidEpsilon);
  CHECK_THROWS_AS(build_surface_grid(2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_surface_grid(4, 1, 0), std::invalid_argument);
}

TEST_CASE("surface grid: counts, exact equal areas, exact tiling") {
  for (const auto& [n, p] : std::vector<std::pair<int, int>>{
           {3, 1}, {3, 2}, {4, 1}, {6, 1}, {8, 1}}) {
    for (int k : {1, 2, 3}) {
      CAPTURE(n);
      CAPTURE(p);
      CAPTURE(k);
      const Grid g = build_surface_grid(n, p, k);
      CHECK(g.carrier == Carrier::PolySurface);
      CHECK(g.cells.size() == size_t(n) * (p + 1) * k * k);
      const double expected = 4.0 * kPi / (n * (p + 1) * k * k);
      double total = 0.0;
      for (const auto& cell : g.cells) {
        CHECK(std::abs(cell.measure - expected) / expected < 1e-12);
        total += cell.measure;
        CHECK(cell.boundary.size() >= 5);
        CHECK((cell.boundary.front() - cell.boundary.back()).norm() == 0.0);
      }
      CHECK(std::abs(total - 4.0 * kPi) < 1e-8);
    }
  }
}

TEST_CASE("surface grid boundaries lie on the polyhedron surface") {
  const Grid g = build_surface_grid(5, 1, 2);
  const PolyhedronSpec spec(5, 1.0, 0.5);
  for (const auto& cell : g.cells) {
    for (const Vec3& v : cell.boundary) {
      CHECK_NOTHROW(tag_surface_point(v, spec));
    }
  }
}

TEST_CASE("cell ids are unique addresses") {
  const Grid g = build_surface_grid(4, 1, 3);
  std::map<std::tuple<int, int, int, int>, int> seen;
  for (const auto& cell : g.cells) {
    seen[{int(cell.id.region), cell.id.face, cell.id.row, cell.id.col}]++;
    CHECK(cell.id.level == 3);
  }
  for (const auto& [key, count] : seen) CHECK(count == 1);
  CHECK(seen.size() == g.cells.size());
}

TEST_CASE("grid_to_sphere: equal spherical areas, boundary on the sphere") {
  const int n = 4, p = 1, k = 2;
  const Grid g = build_surface_grid(n, p, k);
  const PolyhedronSpec spec(n, 1.0, epsilon_for(p));
  const Grid s = grid_to_sphere(g, spec);
  CHECK(s.carrier == Carrier::Sphere);
  REQUIRE(s.cells.size() == g.cells.size());
  const double expected = 4.0 * kPi / double(s.cells.size());
  double total = 0.0;
  for (const auto& cell : s.cells) {
    CHECK(std::abs(cell.measure - expected) / expected < 1e-6);
    total += cell.measure;
    for (const Vec3& v : cell.boundary) CHECK(std::abs(v.norm() - 1.0) < 1e-9);
    // adaptive sampling honors the chord bound
    for (size_t j = 0; j + 1 < cell.boundary.size(); ++j) {
      CHECK((cell.boundary[j] - cell.boundary[j + 1]).norm() < 1.01e-3);
    }
  }
  CHECK(std::abs(total - 4.0 * kPi) < 1e-8);
  // the spherical cells re-measure identically through the independent oracle
  const double oracle = spherical_polygon_area(s.cells.front().boundary, 1.0);
  CHECK(oracle == doctest::Approx(s.cells.front().measure).epsilon(1e-5));
  CHECK_THROWS_AS(grid_to_sphere(g, PolyhedronSpec(5, 1.0, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("grid cells map back onto the polyhedron cells (consistency probe)") {
  // sphere-side boundary mapped forward lands on the poly-side boundary curve
  const Grid g = build_surface_grid(3, 2, 1);
  const PolyhedronSpec spec(3, 1.0, epsilon_for(2));
  const Grid s = grid_to_sphere(g, spec);
  for (size_t c = 0; c < g.cells.size(); c += 5) {
    const auto& sphere_bnd = s.cells[c].boundary;
    for (size_t j = 0; j < sphere_bnd.size(); j += 50) {
      const Vec3 q = forward(sphere_bnd[j], spec).p;
      CHECK_NOTHROW(tag_surface_point(q, spec));
    }
  }
}

TEST_CASE("pyramid_face_point: on-face point and consistent sphere image") {
  const PolyhedronSpec spec(5, 1.0, 0.25);
  for (int j = 0; j < 100; ++j) {
    const double u = uniform01(2, 2 * j);
    const double v = uniform01(2, 2 * j + 1) * (1.0 - u);
    const auto [q, sp] = pyramid_face_point({u, v, j % 5}, spec);
    CHECK(std::abs(face_plane_residual(q.p, Region::PyramidPlus, j % 5, spec)) <
          1e-12);
    CHECK(std::abs(sp.norm() - 1.0) < 1e-12);
    CHECK((forward(sp, spec).p - q.p).norm() < 1e-10);
  }
  const auto [apex, pole] = pyramid_face_point({0.0, 0.0, 0}, spec);
  CHECK(apex.p.x() == 0.0);
  CHECK(pole.z() == 1.0);
  CHECK_THROWS_AS(pyramid_face_point({0.7, 0.7, 0}, spec), DomainError);
}

TEST_CASE("HEALPix curve residuals vanish at n=4, p=2") {
  for (int k : {1, 2, 4}) {
    for (int l = 0; l <= k; ++l) {
      CAPTURE(k);
      CAPTURE(l);
      CHECK(healpix_residuals(k, l) < 1e-12);
    }
  }
  CHECK_THROWS_AS(healpix_residuals(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(healpix_residuals(0, 0), std::invalid_argument);
}

TEST_CASE("ball grid: counts, per-parent equality, exact global sum") {
  const VolumeSpec vspec(4, 1.0, smallest_positive_admissible(4));
  for (int levels : {0, 1, 2}) {
    CAPTURE(levels);
    const BallGrids bg = build_ball_grid(vspec, levels);
    const size_t expect_cells = size_t(4 * 4) << (2 * levels);
    CHECK(bg.poly.cells.size() == expect_cells);
    CHECK(bg.ball.cells.size() == expect_cells);
    double total = 0.0;
    for (const auto& cell : bg.poly.cells) total += cell.measure;
    // sum of tetrahedra = gamma * (xi r)^3 = beta * r^3
    CHECK(std::abs(total - vspec.beta) < 1e-12);
    double ball_total = 0.0;
    for (const auto& cell : bg.ball.cells) ball_total += cell.measure;
    CHECK(std::abs(ball_total - 4.0 * kPi / 3.0) < 1e-12);
  }
  // each refinement level splits a parent into 4 children of exactly V/4
  const BallGrids l0 = build_ball_grid(vspec, 0);
  const BallGrids l1 = build_ball_grid(vspec, 1);
  for (size_t parent = 0; parent < l0.poly.cells.size(); ++parent) {
    const double v = l0.poly.cells[parent].measure;
    for (int c = 0; c < 4; ++c) {
      CHECK(l1.poly.cells[4 * parent + c].measure ==
            doctest::Approx(v / 4.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("ball grid at eps = 0: all 4n 4^levels volumes are exactly equal") {
  for (int n : {3, 4, 6}) {
    for (int levels : {0, 1}) {
      CAPTURE(n);
      CAPTURE(levels);
      const VolumeSpec vspec(n, 1.0, 0.0);
      const BallGrids bg = build_ball_grid(vspec, levels);
      const double expected = vspec.beta / double(bg.poly.cells.size());
      for (const auto& cell : bg.poly.cells) {
        CHECK(std::abs(cell.measure - expected) / expected < 1e-13);
      }
    }
  }
}

TEST_CASE("ball grid boundaries stay inside the ball") {
  const VolumeSpec vspec(3, 1.0, smallest_positive_admissible(3));
  const BallGrids bg = build_ball_grid(vspec, 1);
  for (const auto& cell : bg.ball.cells) {
    CHECK(!cell.breaks.empty());
    for (const Vec3& v : cell.boundary) CHECK(v.norm() < 1.0 + 1e-9);
  }
  CHECK_THROWS_AS(build_ball_grid(VolumeSpec(6, 1.0, 0.3), 0), NotAdmissible);
  CHECK_THROWS_AS(build_ball_grid(vspec, -1), std::invalid_argument);
}

TEST_CASE("ball cell images partition: Monte Carlo volume of one cell") {
  const VolumeSpec vspec(4, 1.0, smallest_positive_admissible(4));
  const BallGrids bg = build_ball_grid(vspec, 0);
  const auto& tet = bg.poly.cells[0].boundary;
  Mat3 m;
  m.col(0) = tet[1] - tet[0];
  m.col(1) = tet[2] - tet[0];
  m.col(2) = tet[3] - tet[0];
  const Mat3 minv = m.inverse();
  auto inside = [&](const Vec3& p) {
    if (p.norm() > 1.0) return false;
    const Vec3 bc = minv * (ball_to_poly(p, vspec).p - tet[0]);
    return bc.x() >= 0.0 && bc.y() >= 0.0 && bc.z() >= 0.0 && bc.sum() <= 1.0;
  };
  Vec3 lo = bg.ball.cells[0].boundary[0], hi = lo;
  for (const Vec3& v : bg.ball.cells[0].boundary) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec3 pad = 0.05 * (hi - lo);
  const McResult mc =
      monte_carlo_volume(inside, lo - pad, hi + pad, 200000, 99);
  CHECK(std::abs(mc.estimate - bg.ball.cells[0].measure) < 3.0 * mc.stderr_);
}
