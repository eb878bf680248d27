#include "polysphere/core.hpp"

#include <cmath>

namespace polysphere {

const char* to_string(Region r) {
  switch (r) {
    case Region::PyramidPlus:
      return "pyramid+";
    case Region::Prism:
      return "prism";
    case Region::PyramidMinus:
      return "pyramid-";
  }
  return "?";
}

double epsilon_max(int n) {
  return 1.0 - kPi / (2.0 * n) / std::tan(kPi / n);
}

PolyhedronSpec::PolyhedronSpec(int n_, double r_, double epsilon_)
    : n(n_), r(r_), epsilon(epsilon_) {
  if (n < 3) throw std::invalid_argument("PolyhedronSpec: n must be >= 3");
  if (!(r > 0.0)) throw std::invalid_argument("PolyhedronSpec: r must be > 0");
  const double emax = epsilon_max(n);
  if (!(epsilon >= 0.0 && epsilon < emax)) {
    throw std::invalid_argument(
        "PolyhedronSpec: epsilon must lie in [0, epsilon_max(n)) = [0, " +
        std::to_string(emax) + ") for n = " + std::to_string(n) +
        "; the pyramid altitude b_n is real and positive only there");
  }
}

DerivedParams derive_params(const PolyhedronSpec& spec) {
  const int n = spec.n;
  const double r = spec.r;
  const double eps = spec.epsilon;
  DerivedParams d;
  d.edge = 2.0 * kPi * r / n;
  d.circum = kPi * r / (n * std::sin(kPi / n));
  d.inradius = d.circum * std::cos(kPi / n);
  d.slant = 2.0 * (1.0 - eps) * r;
  const double cot = 1.0 / std::tan(kPi / n);
  d.altitude =
      r * std::sqrt(4.0 * (1.0 - eps) * (1.0 - eps) - kPi * kPi / (n * n) * cot * cot);
  d.cap_area = 2.0 * kPi * (1.0 - eps) * r * r;
  d.face_area = d.cap_area / n;
  d.belt_area = 4.0 * kPi * eps * r * r;
  return d;
}

double zone_angle(int i, int n) { return 2.0 * kPi * i / n; }

Mat3 zone_rotation(int i, int n) {
  Mat3 m;
  const double a = zone_angle(i, n);
  m = Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix();
  return m;
}

ZoneTag classify_zone(const Vec3& v, int n) {
  ZoneTag tag;
  tag.hemisphere = v.z() >= 0.0 ? Hemisphere::North : Hemisphere::South;
  if (v.x() == 0.0 && v.y() == 0.0) {
    tag.i = 0;
    return tag;
  }
  double az = std::atan2(v.y(), v.x());
  if (az < 0.0) az += 2.0 * kPi;
  int i = static_cast<int>(std::floor(n * az / (2.0 * kPi)));
  if (i < 0) i = 0;
  if (i >= n) i = n - 1;
  tag.i = i;
  return tag;
}

double zone_local_azimuth(const Vec3& v, int i, int n) {
  const double a = zone_angle(i, n);
  const double xl = v.x() * std::cos(a) + v.y() * std::sin(a);
  const double yl = -v.x() * std::sin(a) + v.y() * std::cos(a);
  if (xl == 0.0 && yl == 0.0) return 0.0;
  return std::atan2(yl, xl);
}

double face_plane_residual(const Vec3& q, Region region, int zone_i,
                           const PolyhedronSpec& spec) {
  const DerivedParams d = derive_params(spec);
  const double a = zone_angle(zone_i, spec.n);
  const double xl = q.x() * std::cos(a) + q.y() * std::sin(a);
  const double yl = -q.x() * std::sin(a) + q.y() * std::cos(a);
  const double cn = std::cos(kPi / spec.n);
  const double sn = std::sin(kPi / spec.n);
  switch (region) {
    case Region::Prism:
      // Eq. of the prism face in zone-local coordinates.
      return yl * sn + xl * cn - d.circum * cn;
    case Region::PyramidPlus: {
      // Plane through the apex and the zone's base edge; unit-normalized.
      const double b = d.altitude;
      const double R = d.circum;
      const double er = spec.epsilon * spec.r;
      const double val =
          xl * b * cn + yl * b * sn + (q.z() - er) * R * cn - b * R * cn;
      const double norm = std::sqrt(b * b + R * R * cn * cn);
      return val / norm;
    }
    case Region::PyramidMinus: {
      const double b = d.altitude;
      const double R = d.circum;
      const double er = spec.epsilon * spec.r;
      const double val =
          xl * b * cn + yl * b * sn - (q.z() + er) * R * cn - b * R * cn;
      const double norm = std::sqrt(b * b + R * R * cn * cn);
      return val / norm;
    }
  }
  return 0.0;
}

Region classify_region(const Vec3& q, const PolyhedronSpec& spec) {
  const double er = spec.epsilon * spec.r;
  const double tol = kOnSurfaceTol * spec.r;
  const int i = classify_zone(q, spec.n).i;
  Region region;
  if (q.z() > er) {
    region = Region::PyramidPlus;
  } else if (q.z() < -er) {
    region = Region::PyramidMinus;
  } else {
    region = Region::Prism;  // includes the |Z| = eps*r tie-break
  }
  // A point on a boundary circle satisfies both face planes; checking the
  // tagged one is enough.
  if (std::abs(face_plane_residual(q, region, i, spec)) > tol) {
    throw NotOnSurface("point is not on the surface of K_n within tolerance");
  }
  return region;
}

PolySurfacePoint tag_surface_point(const Vec3& q, const PolyhedronSpec& spec) {
  PolySurfacePoint out;
  out.p = q;
  out.zone = classify_zone(q, spec.n);
  out.region = classify_region(q, spec);
  return out;
}

}  // namespace polysphere
