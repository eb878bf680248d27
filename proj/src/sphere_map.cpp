#include "polysphere/sphere_map.hpp"

#include <cmath>

namespace polysphere {

namespace {

double clamp_nonneg(double x) { return x < 0.0 ? 0.0 : x; }

}  // namespace

PolySurfacePoint forward_cap(const Vec3& p, const PolyhedronSpec& spec) {
  const double r = spec.r;
  const double eps = spec.epsilon;
  const double er = eps * r;
  if (p.z() < er - 1e-12 * r) {
    throw DomainError("forward_cap: point below the north cap boundary");
  }
  const DerivedParams d = derive_params(spec);
  PolySurfacePoint out;
  out.region = Region::PyramidPlus;
  if (p.x() == 0.0 && p.y() == 0.0) {
    // North pole -> apex.
    out.p = Vec3(0.0, 0.0, er + d.altitude);
    out.zone = ZoneTag{0, Hemisphere::North};
    return out;
  }
  const ZoneTag zone = classify_zone(p, spec.n);
  const int i = zone.i;
  const double a = zone_angle(i, spec.n);
  const double lam = zone_local_azimuth(p, i, spec.n);
  const double sn = std::sin(kPi / spec.n);
  const double s = std::sqrt(clamp_nonneg(r * (r - p.z()) / (1.0 - eps)));
  const double X =
      s * (kPi * std::cos(a) / (spec.n * sn) - std::sin(a + kPi / spec.n) * lam);
  const double Y =
      s * (kPi * std::sin(a) / (spec.n * sn) + std::cos(a + kPi / spec.n) * lam);
  const double Z =
      er + d.altitude * (1.0 - std::sqrt(clamp_nonneg((1.0 - p.z() / r) / (1.0 - eps))));
  out.p = Vec3(X, Y, Z);
  out.zone = ZoneTag{i, Hemisphere::North};
  return out;
}

PolySurfacePoint forward_belt(const Vec3& p, const PolyhedronSpec& spec) {
  const double r = spec.r;
  const double er = spec.epsilon * r;
  if (std::abs(p.z()) > er + 1e-12 * r) {
    throw DomainError("forward_belt: point outside the equatorial belt");
  }
  const DerivedParams d = derive_params(spec);
  const ZoneTag zone = classify_zone(p, spec.n);
  const int i = zone.i;
  const double a = zone_angle(i, spec.n);
  const double lam = zone_local_azimuth(p, i, spec.n);
  PolySurfacePoint out;
  const double X = d.circum * std::cos(a) - r * std::sin(a + kPi / spec.n) * lam;
  const double Y = d.circum * std::sin(a) + r * std::cos(a + kPi / spec.n) * lam;
  out.p = Vec3(X, Y, p.z());
  out.region = Region::Prism;
  out.zone = zone;
  return out;
}

PolySurfacePoint forward_cap_south(const Vec3& p, const PolyhedronSpec& spec) {
  if (p.z() > -spec.epsilon * spec.r + 1e-12 * spec.r) {
    throw DomainError("forward_cap_south: point above the south cap boundary");
  }
  // Mirror image of the north cap map. The printed south-cap Z formula sends
  // the south pole to the north apex; the mirrored form below is the bijection
  // onto P_n^- consistent with continuity at z = -eps*r.
  PolySurfacePoint out = forward_cap(Vec3(p.x(), p.y(), -p.z()), spec);
  out.p.z() = -out.p.z();
  out.region = Region::PyramidMinus;
  out.zone.hemisphere = Hemisphere::South;
  return out;
}

PolySurfacePoint forward(const Vec3& p, const PolyhedronSpec& spec) {
  const double r = spec.r;
  if (std::abs(p.norm() - r) > kOnSurfaceTol * r) {
    throw DomainError("forward: point is not on the sphere S^2(r)");
  }
  const double er = spec.epsilon * r;
  if (p.z() > er) return forward_cap(p, spec);
  if (p.z() < -er) return forward_cap_south(p, spec);
  return forward_belt(p, spec);
}

Vec3 invert_cap(const PolySurfacePoint& q, const PolyhedronSpec& spec) {
  const double r = spec.r;
  const double eps = spec.epsilon;
  const double er = eps * r;
  const DerivedParams d = derive_params(spec);
  const double X = q.p.x();
  const double Y = q.p.y();
  const double Z = q.p.z();
  if (X == 0.0 && Y == 0.0) {
    // Apex: the lambda quotient is 0/0, but the limit is the pole.
    return Vec3(0.0, 0.0, r);
  }
  const int i = q.zone.i;
  const double a = zone_angle(i, spec.n);
  const double t = 1.0 - (Z - er) / d.altitude;
  const double z = r - r * (1.0 - eps) * t * t;
  const double num = -X * std::sin(a) + Y * std::cos(a);
  const double den = X * std::cos(a + kPi / spec.n) + Y * std::sin(a + kPi / spec.n);
  const double lam = kPi / (spec.n * std::sin(kPi / spec.n)) * num / den;
  const double rho = std::sqrt(clamp_nonneg(r * r - z * z));
  return Vec3(rho * std::cos(lam + a), rho * std::sin(lam + a), z);
}

Vec3 belt_inverse_formula(const Vec3& q, int zone_i, const PolyhedronSpec& spec) {
  const double r = spec.r;
  const double a = zone_angle(zone_i, spec.n);
  const double yl = q.y() * std::cos(a) - q.x() * std::sin(a);
  const double ang = yl / (r * std::cos(kPi / spec.n)) + a;
  const double rho = std::sqrt(clamp_nonneg(r * r - q.z() * q.z()));
  return Vec3(rho * std::cos(ang), rho * std::sin(ang), q.z());
}

Vec3 invert_belt(const PolySurfacePoint& q, const PolyhedronSpec& spec) {
  if (std::abs(q.p.z()) > spec.epsilon * spec.r + 1e-12 * spec.r) {
    throw DomainError("invert_belt: |Z| exceeds eps*r");
  }
  return belt_inverse_formula(q.p, q.zone.i, spec);
}

Vec3 invert_cap_south(const PolySurfacePoint& q, const PolyhedronSpec& spec) {
  PolySurfacePoint m = q;
  m.p.z() = -m.p.z();
  Vec3 s = invert_cap(m, spec);
  s.z() = -s.z();
  return s;
}

Vec3 invert(const PolySurfacePoint& q, const PolyhedronSpec& spec) {
  switch (q.region) {
    case Region::PyramidPlus:
      return invert_cap(q, spec);
    case Region::Prism:
      return invert_belt(q, spec);
    case Region::PyramidMinus:
      return invert_cap_south(q, spec);
  }
  throw DomainError("invert: bad region tag");
}

Vec3 invert_point(const Vec3& q, const PolyhedronSpec& spec) {
  return invert(tag_surface_point(q, spec), spec);
}

FundamentalForm fundamental_form(double phi, double theta,
                                 const PolyhedronSpec& spec, int zone_i) {
  const double r = spec.r;
  const double eps = spec.epsilon;
  const double dth = theta - (2.0 * zone_i + 1.0) * kPi / spec.n;
  const double c2 = std::cos(phi / 2.0) * std::cos(phi / 2.0);
  const double s2 = std::sin(phi / 2.0) * std::sin(phi / 2.0);
  FundamentalForm f;
  f.E = r * r / (2.0 * (1.0 - eps)) * (4.0 * (1.0 - eps) * (1.0 - eps) + dth * dth) * c2;
  f.F = r * r / (2.0 * (1.0 - eps)) * dth * std::sin(phi);
  f.G = 2.0 * r * r / (1.0 - eps) * s2;
  return f;
}

Vec3 forward_cap_spherical(double phi, double theta, const PolyhedronSpec& spec) {
  const double r = spec.r;
  const Vec3 p(r * std::cos(theta) * std::sin(phi), r * std::sin(theta) * std::sin(phi),
               r * std::cos(phi));
  return forward_cap(p, spec).p;
}

}  // namespace polysphere
