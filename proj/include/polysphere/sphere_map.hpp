#ifndef POLYSPHERE_SPHERE_MAP_HPP
#define POLYSPHERE_SPHERE_MAP_HPP

#include "polysphere/core.hpp"

namespace polysphere {

enum class MapDirection { SphereToPoly, PolyToSphere };

/// Area preserving map T_n : S^2(r) -> K_n(r, eps) and its inverse.
///
/// The forward map sends the north cap (z >= eps*r) onto the north pyramid,
/// the belt (|z| <= eps*r) onto the prism via a Lambert cylindrical step, and
/// the south cap onto the south pyramid by mirror symmetry. All pieces agree
/// on the shared boundary circles, so the assembled map is continuous.

PolySurfacePoint forward_cap(const Vec3& p, const PolyhedronSpec& spec);
PolySurfacePoint forward_belt(const Vec3& p, const PolyhedronSpec& spec);
PolySurfacePoint forward_cap_south(const Vec3& p, const PolyhedronSpec& spec);

/// Total on S^2(r); rejects points off the sphere.
PolySurfacePoint forward(const Vec3& p, const PolyhedronSpec& spec);

Vec3 invert_cap(const PolySurfacePoint& q, const PolyhedronSpec& spec);
Vec3 invert_belt(const PolySurfacePoint& q, const PolyhedronSpec& spec);
Vec3 invert_cap_south(const PolySurfacePoint& q, const PolyhedronSpec& spec);

/// Dispatch on the region tag.
Vec3 invert(const PolySurfacePoint& q, const PolyhedronSpec& spec);

/// Classify-then-invert convenience for raw surface points.
Vec3 invert_point(const Vec3& q, const PolyhedronSpec& spec);

/// Inverse Lambert step for zone i evaluated on raw coordinates, without any
/// on-surface check. forward/invert use it internally; the HEALPix prism-line
/// correspondence also needs it on off-surface chords.
Vec3 belt_inverse_formula(const Vec3& q, int zone_i, const PolyhedronSpec& spec);

struct FundamentalForm {
  double E, F, G;
};

/// Closed-form first fundamental form of the cap map in spherical coordinates;
/// satisfies E*G - F^2 = r^4 sin^2(phi).
FundamentalForm fundamental_form(double phi, double theta,
                                 const PolyhedronSpec& spec, int zone_i);

/// Cap map in spherical coordinates (north cap, zone from theta).
Vec3 forward_cap_spherical(double phi, double theta, const PolyhedronSpec& spec);

}  // namespace polysphere

#endif
