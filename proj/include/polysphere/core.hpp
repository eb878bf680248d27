#ifndef POLYSPHERE_CORE_HPP
#define POLYSPHERE_CORE_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace polysphere {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

// Tolerances shared across the library (fractions of the length scale r).
inline constexpr double kOnSurfaceTol = 1e-9;
inline constexpr double kRoundtripTol = 1e-10;
inline constexpr double kRelIdentityTol = 1e-12;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotOnSurface : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAdmissible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutsideBall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutsidePolyhedron : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Region { PyramidPlus, Prism, PyramidMinus };
enum class Hemisphere { North, South };

const char* to_string(Region r);

/// Largest epsilon for which the pyramid altitude stays real and positive.
double epsilon_max(int n);

/// The polyhedron family: a regular n-gonal prism of height 2*eps*r capped
/// by two congruent pyramids whose lateral area matches the spherical caps.
struct PolyhedronSpec {
  int n;
  double r;
  double epsilon;

  PolyhedronSpec(int n_, double r_, double epsilon_);
};

struct DerivedParams {
  double edge;       // polygon edge length, 2*pi*r/n
  double circum;     // circumradius of the base polygon
  double inradius;   // inradius of the base polygon
  double slant;      // slant height of a pyramid face, 2*(1-eps)*r
  double altitude;   // pyramid altitude
  double face_area;  // one pyramid face
  double cap_area;   // 2*pi*(1-eps)*r^2
  double belt_area;  // 4*pi*eps*r^2
};

DerivedParams derive_params(const PolyhedronSpec& spec);

/// Azimuthal wedge index plus hemisphere; wedge i spans [2*pi*i/n, 2*pi*(i+1)/n).
struct ZoneTag {
  int i = 0;
  Hemisphere hemisphere = Hemisphere::North;
};

double zone_angle(int i, int n);   // alpha_i = 2*pi*i/n
Mat3 zone_rotation(int i, int n);  // rotation around OZ by alpha_i

/// Total on R^3 minus nothing: axis points get zone 0, hemisphere by sign of z.
ZoneTag classify_zone(const Vec3& v, int n);

/// Azimuth of v relative to zone i, i.e. the angle measured from alpha_i.
double zone_local_azimuth(const Vec3& v, int i, int n);

struct PolySurfacePoint {
  Vec3 p;
  Region region = Region::Prism;
  ZoneTag zone;
};

/// Signed residual of the face plane of (region, zone) at point q.
double face_plane_residual(const Vec3& q, Region region, int zone_i,
                           const PolyhedronSpec& spec);

/// Region by Z against +-eps*r with the tie broken toward Prism; throws
/// NotOnSurface when no face plane is within kOnSurfaceTol * r.
Region classify_region(const Vec3& q, const PolyhedronSpec& spec);

/// Classify both tags, verifying the point lies on the surface.
PolySurfacePoint tag_surface_point(const Vec3& q, const PolyhedronSpec& spec);

}  // namespace polysphere

#endif
