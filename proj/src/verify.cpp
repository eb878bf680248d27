#include "polysphere/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace polysphere {

VerificationReport VerificationReport::make(std::string name, double measured,
                                            double expected, double tolerance,
                                            long samples, std::uint64_t seed) {
  VerificationReport r;
  r.name = std::move(name);
  r.measured = measured;
  r.expected = expected;
  r.tolerance = tolerance;
  r.passed = std::abs(measured - expected) <= tolerance;
  r.samples = samples;
  r.seed = seed;
  return r;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string VerificationReport::to_json() const {
  std::ostringstream os;
  os << "{\"name\":\"" << name << "\",\"measured\":" << fmt17(measured)
     << ",\"expected\":" << fmt17(expected) << ",\"tolerance\":" << fmt17(tolerance)
     << ",\"passed\":" << (passed ? "true" : "false") << ",\"samples\":" << samples
     << ",\"seed\":" << seed << "}";
  return os.str();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "[\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    os << "  " << reports[i].to_json();
    if (i + 1 < reports.size()) os << ",";
    os << "\n";
  }
  os << "]\n";
  return os.str();
}

double spherical_polygon_area(const std::vector<Vec3>& boundary, double r) {
  if (boundary.size() < 4) {
    throw DegenerateCurve("spherical_polygon_area: need at least 3 samples");
  }
  if ((boundary.front() - boundary.back()).norm() > 1e-9 * r) {
    throw OpenCurve("spherical_polygon_area: curve is not closed");
  }
  const size_t m = boundary.size();
  std::vector<double> theta(m), w(m);  // w = 1 - cos(phi)
  std::vector<bool> pole(m);
  for (size_t j = 0; j < m; ++j) {
    const Vec3& v = boundary[j];
    const double rho = std::hypot(v.x(), v.y());
    pole[j] = rho < 1e-12 * r;
    theta[j] = pole[j] ? 0.0 : std::atan2(v.y(), v.x());
    double cz = v.z() / v.norm();
    cz = std::min(1.0, std::max(-1.0, cz));
    w[j] = 1.0 - cz;
  }
  // A sample at a pole has no azimuth of its own; the true edge into the pole
  // runs along a meridian, so give it the neighbor's azimuth.
  for (size_t j = 0; j < m; ++j) {
    if (!pole[j]) continue;
    size_t k = j;
    while (pole[k]) k = (k + 1) % m;
    theta[j] = theta[k];
  }
  double integral = 0.0;
  double winding = 0.0;
  for (size_t j = 0; j + 1 < m; ++j) {
    double dth = theta[j + 1] - theta[j];
    while (dth > kPi) dth -= 2.0 * kPi;
    while (dth <= -kPi) dth += 2.0 * kPi;
    integral += 0.5 * (w[j] + w[j + 1]) * dth;
    winding += dth;
  }
  const double full = 4.0 * kPi * r * r;
  const int wind = static_cast<int>(std::lround(winding / (2.0 * kPi)));
  double area = r * r * integral;
  if (wind == 0) return std::abs(area);
  area /= wind;  // area of the region containing the north pole
  if (area < 0.0) area += full;
  return area <= full / 2.0 ? area : full - area;
}

double planar_polygon_area(const std::vector<Vec3>& vertices) {
  if (vertices.size() < 3) throw NonPlanar("planar_polygon_area: need >= 3 vertices");
  Vec3 nvec = Vec3::Zero();
  for (size_t j = 0; j < vertices.size(); ++j) {
    const Vec3& a = vertices[j];
    const Vec3& b = vertices[(j + 1) % vertices.size()];
    nvec += a.cross(b);
  }
  const double area = 0.5 * nvec.norm();
  if (area > 0.0) {
    const Vec3 unit = nvec.normalized();
    double scale = 0.0;
    for (const Vec3& v : vertices) scale = std::max(scale, (v - vertices[0]).norm());
    scale = std::max(scale, vertices[0].norm());
    for (const Vec3& v : vertices) {
      if (std::abs((v - vertices[0]).dot(unit)) > 1e-9 * scale) {
        throw NonPlanar("planar_polygon_area: vertices are not coplanar");
      }
    }
  }
  return area;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ index);
  return (h >> 11) * 0x1.0p-53;
}

McResult monte_carlo_volume(const std::function<bool(const Vec3&)>& inside,
                            const Vec3& box_lo, const Vec3& box_hi, long n_samples,
                            std::uint64_t seed) {
  const Vec3 ext = box_hi - box_lo;
  const double box_vol = ext.x() * ext.y() * ext.z();
  long hits = 0;
  for (long j = 0; j < n_samples; ++j) {
    const Vec3 p(box_lo.x() + ext.x() * uniform01(seed, 3 * j),
                 box_lo.y() + ext.y() * uniform01(seed, 3 * j + 1),
                 box_lo.z() + ext.z() * uniform01(seed, 3 * j + 2));
    if (inside(p)) ++hits;
  }
  const double frac = double(hits) / double(n_samples);
  McResult res;
  res.estimate = frac * box_vol;
  res.stderr_ = box_vol * std::sqrt(frac * (1.0 - frac) / double(n_samples));
  res.hits = hits;
  return res;
}

double seam_probe(const std::function<Vec3(const Vec3&)>& map,
                  const std::vector<std::pair<Vec3, Vec3>>& pairs) {
  double worst = 0.0;
  for (const auto& [a, b] : pairs) {
    worst = std::max(worst, (map(a) - map(b)).norm());
  }
  return worst;
}

std::vector<std::pair<Vec3, Vec3>> sphere_seam_pairs(const PolyhedronSpec& spec,
                                                     double delta, int samples) {
  std::vector<std::pair<Vec3, Vec3>> pairs;
  const double r = spec.r;
  const double dang = delta / r;
  auto sph = [&](double phi, double th) {
    return Vec3(r * std::cos(th) * std::sin(phi), r * std::sin(th) * std::sin(phi),
                r * std::cos(phi));
  };
  // Zone planes, at a spread of colatitudes avoiding the poles.
  for (int i = 0; i < spec.n; ++i) {
    const double a = zone_angle(i, spec.n);
    for (int s = 1; s < samples; ++s) {
      const double phi = kPi * s / samples;
      pairs.emplace_back(sph(phi, a - dang), sph(phi, a + dang));
    }
  }
  // Cap/belt boundary circles.
  const double phi_n = std::acos(spec.epsilon);
  const double phi_s = kPi - phi_n;
  for (int s = 0; s < samples; ++s) {
    const double th = 2.0 * kPi * s / samples;
    pairs.emplace_back(sph(phi_n - dang, th), sph(phi_n + dang, th));
    pairs.emplace_back(sph(phi_s - dang, th), sph(phi_s + dang, th));
  }
  return pairs;
}

std::vector<std::pair<Vec3, Vec3>> ball_seam_pairs(const VolumeSpec& vspec,
                                                   double delta, int samples) {
  std::vector<std::pair<Vec3, Vec3>> pairs;
  const double dang = delta / vspec.r;
  auto pt = [&](double rho, double phi, double th) {
    return Vec3(rho * std::cos(th) * std::sin(phi), rho * std::sin(th) * std::sin(phi),
                rho * std::cos(phi));
  };
  const double phi_n = std::acos(vspec.epsilon);
  const double phi_s = kPi - phi_n;
  for (int s = 0; s < samples; ++s) {
    const double rho = vspec.r * (0.1 + 0.9 * (s + 0.5) / samples);
    const double th = 2.0 * kPi * s / samples;
    // Cone seams (cap/belt boundary at every shell).
    pairs.emplace_back(pt(rho, phi_n - dang, th), pt(rho, phi_n + dang, th));
    pairs.emplace_back(pt(rho, phi_s - dang, th), pt(rho, phi_s + dang, th));
    // Zone planes at mid-belt and mid-cap colatitudes.
    for (int i = 0; i < vspec.n; ++i) {
      const double a = zone_angle(i, vspec.n);
      pairs.emplace_back(pt(rho, kPi / 2, a - dang), pt(rho, kPi / 2, a + dang));
      pairs.emplace_back(pt(rho, phi_n / 2, a - dang), pt(rho, phi_n / 2, a + dang));
    }
  }
  return pairs;
}

}  // namespace polysphere
