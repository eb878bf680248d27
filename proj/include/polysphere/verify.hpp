#ifndef POLYSPHERE_VERIFY_HPP
#define POLYSPHERE_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "polysphere/ball_map.hpp"
#include "polysphere/core.hpp"

namespace polysphere {

struct OpenCurve : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateCurve : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPlanar : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationReport {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  long samples = 0;
  std::uint64_t seed = 0;

  static VerificationReport make(std::string name, double measured, double expected,
                                 double tolerance, long samples = 0,
                                 std::uint64_t seed = 0);
  std::string to_json() const;
};

std::string reports_to_json(const std::vector<VerificationReport>& reports);

/// Area enclosed by a closed sampled curve on S^2(r), via the boundary line
/// integral r^2 * Int (1 - cos phi) dtheta (composite trapezoid). For curves
/// winding around a pole the smaller enclosed region is returned (hemisphere
/// for an exact tie). The curve must repeat its first sample at the end.
double spherical_polygon_area(const std::vector<Vec3>& boundary, double r);

/// Shoelace area of a coplanar polygon given by its vertices (not repeated).
double planar_polygon_area(const std::vector<Vec3>& vertices);

struct McResult {
  double estimate;
  double stderr_;
  long hits;
};

/// Hit-or-miss volume estimate over an axis-aligned box. Per-sample randomness
/// is counter-based (splitmix64 of seed and index), so the result is
/// bit-reproducible and independent of evaluation order.
McResult monte_carlo_volume(const std::function<bool(const Vec3&)>& inside,
                            const Vec3& box_lo, const Vec3& box_hi, long n_samples,
                            std::uint64_t seed);

/// Max image distance over point pairs straddling a seam.
double seam_probe(const std::function<Vec3(const Vec3&)>& map,
                  const std::vector<std::pair<Vec3, Vec3>>& pairs);

/// Pairs straddling every zone plane and the z = +-eps*r circles of S^2(r),
/// at offset delta.
std::vector<std::pair<Vec3, Vec3>> sphere_seam_pairs(const PolyhedronSpec& spec,
                                                     double delta, int samples = 64);

/// Pairs straddling the V_n region boundaries (zone planes and the
/// beta = arccos(eps) cone) inside the ball of radius r.
std::vector<std::pair<Vec3, Vec3>> ball_seam_pairs(const VolumeSpec& vspec,
                                                   double delta, int samples = 64);

/// Counter-based uniform double in [0, 1).
double uniform01(std::uint64_t seed, std::uint64_t index);

}  // namespace polysphere

#endif
