#include "polysphere/ball_map.hpp"

#include <algorithm>
#include <cmath>

#include "polysphere/sphere_map.hpp"

namespace polysphere {

namespace {

// Tolerance for recognizing paper-precision admissible epsilons (the paper
// prints 5-6 digits; |c - (2-3*eps)| at such a truncation is ~1e-6).
constexpr double kAdmissibleTol = 1e-5;

double cot(double x) { return 1.0 / std::tan(x); }

}  // namespace

VolumeSpec::VolumeSpec(int n_, double r_, double epsilon_)
    : n(n_), r(r_), epsilon(epsilon_) {
  if (n < 3) throw std::invalid_argument("VolumeSpec: n must be >= 3");
  if (!(r > 0.0)) throw std::invalid_argument("VolumeSpec: r must be > 0");
  if (!(epsilon >= 0.0 && epsilon < epsilon_max(n))) {
    throw std::invalid_argument(
        "VolumeSpec: epsilon outside [0, epsilon_max(n)); c(eps) would not be real");
  }
  const double q = kPi * kPi / (double(n) * n) * cot(kPi / n) * cot(kPi / n);
  c_eps = std::sqrt(4.0 * (1.0 - epsilon) * (1.0 - epsilon) - q);
  gamma = 2.0 * (epsilon + c_eps / 3.0) * kPi * kPi / n * cot(kPi / n);
  beta = 4.0 * kPi / 3.0;
  xi = std::cbrt(beta / gamma);
  admissible =
      epsilon == 0.0 || std::abs(c_eps - (2.0 - 3.0 * epsilon)) <= kAdmissibleTol;
}

std::vector<double> admissible_epsilons(int n) {
  std::vector<double> out{0.0};
  const double q = kPi * kPi / (double(n) * n) * cot(kPi / n) * cot(kPi / n);
  const double disc = 16.0 - 20.0 * q;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    for (double e : {(4.0 - s) / 10.0, (4.0 + s) / 10.0}) {
      if (e > 0.0 && e < epsilon_max(n) && e <= 2.0 / 3.0 + 1e-15) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double smallest_positive_admissible(int n) {
  const auto eps = admissible_epsilons(n);
  if (eps.size() < 2) {
    throw NotAdmissible("no positive admissible epsilon exists for n = " +
                        std::to_string(n));
  }
  return eps[1];
}

SolidPolyPoint ball_to_poly(const Vec3& p, const VolumeSpec& vspec, bool unchecked) {
  if (!vspec.admissible && !unchecked) {
    throw NotAdmissible("ball_to_poly: spec is not volume preserving; pass unchecked "
                        "to evaluate anyway");
  }
  const double rho = p.norm();
  if (rho > vspec.r * (1.0 + 1e-9)) throw OutsideBall("ball_to_poly: |p| > r");
  SolidPolyPoint out;
  if (rho == 0.0) {
    out.p = Vec3::Zero();
    out.shell_rho = 0.0;
    out.region = Region::Prism;
    return out;
  }
  const double shell = vspec.xi * rho;
  const PolyhedronSpec shell_spec(vspec.n, shell, vspec.epsilon);
  const PolySurfacePoint q = forward(vspec.xi * p, shell_spec);
  out.p = q.p;
  out.shell_rho = shell;
  out.region = q.region;
  return out;
}

Vec3 poly_to_ball(const Vec3& q, const VolumeSpec& vspec, bool unchecked) {
  if (!vspec.admissible && !unchecked) {
    throw NotAdmissible("poly_to_ball: spec is not volume preserving; pass unchecked "
                        "to evaluate anyway");
  }
  if (q.norm() == 0.0) return Vec3::Zero();
  const int n = vspec.n;
  const double eps = vspec.epsilon;
  const double c = vspec.c_eps;
  const ZoneTag zone = classify_zone(q, n);
  const double a = zone_angle(zone.i, n);
  const double xl = q.x() * std::cos(a) + q.y() * std::sin(a);
  const double yl = -q.x() * std::sin(a) + q.y() * std::cos(a);
  const double tn = std::tan(kPi / n);
  const double sn = std::sin(kPi / n);

  // Cap/belt split: on the prism face of the shell through this point the
  // height is bounded by eps * shell, so recover the prism-assumption shell
  // first and compare. (The boundary is the cone over the top polygon edges,
  // not the circular cone z = eps * |q| of the ball side.)
  const double shell_prism = (xl + yl * tn) * n * sn / kPi;
  Region region;
  if (eps == 0.0) {
    region = q.z() >= 0.0 ? Region::PyramidPlus : Region::PyramidMinus;
  } else if (std::abs(q.z()) <= eps * shell_prism) {
    region = Region::Prism;  // includes the shared boundary cone
  } else {
    region = q.z() > 0.0 ? Region::PyramidPlus : Region::PyramidMinus;
  }

  double shell;
  if (region == Region::Prism) {
    shell = shell_prism;
  } else {
    const double zl = std::abs(q.z());
    shell = (xl + yl * tn + zl * kPi / (c * n * sn)) /
            ((eps / c + 1.0) * kPi / (n * sn));
  }
  if (shell > vspec.r * vspec.xi * (1.0 + 1e-9)) {
    throw OutsidePolyhedron("poly_to_ball: point lies outside K_n(r*xi, eps)");
  }
  if (!(shell > 0.0)) {
    throw OutsidePolyhedron("poly_to_ball: degenerate shell radius");
  }
  const PolyhedronSpec shell_spec(n, shell, eps);
  PolySurfacePoint sp;
  sp.p = q;
  sp.region = region;
  sp.zone = zone;
  return invert(sp, shell_spec) / vspec.xi;
}

double jacobian_fd(const std::function<Vec3(const Vec3&)>& map, const Vec3& p,
                   double step) {
  Mat3 J;
  for (int c = 0; c < 3; ++c) {
    Vec3 hi = p, lo = p;
    hi[c] += step;
    lo[c] -= step;
    J.col(c) = (map(hi) - map(lo)) / (2.0 * step);
  }
  return J.determinant();
}

namespace {

// (zone, cap/belt) classification of a ball point under V_n.
std::pair<int, int> ball_region_key(const Vec3& p, const VolumeSpec& vspec) {
  const double rho = p.norm();
  const double er = vspec.epsilon * rho;
  int band;
  if (p.z() > er)
    band = 1;
  else if (p.z() < -er)
    band = -1;
  else
    band = 0;
  return {classify_zone(p, vspec.n).i, band};
}

}  // namespace

double ball_jacobian_fd(const VolumeSpec& vspec, const Vec3& p, double step) {
  const auto key = ball_region_key(p, vspec);
  for (int c = 0; c < 3; ++c) {
    for (double s : {-step, step}) {
      Vec3 q = p;
      q[c] += s;
      if (ball_region_key(q, vspec) != key) {
        throw StepTooLarge("ball_jacobian_fd: stencil crosses a region boundary");
      }
    }
  }
  return jacobian_fd(
      [&](const Vec3& v) { return ball_to_poly(v, vspec, /*unchecked=*/true).p; }, p,
      step);
}

double jacobian_cap(const VolumeSpec& vspec) {
  const double c = vspec.c_eps;
  const double e = vspec.epsilon;
  return (c + e) / ((1.0 - e) * (c + 3.0 * e));
}

double jacobian_belt(const VolumeSpec& vspec) {
  return 2.0 / (3.0 * vspec.epsilon + vspec.c_eps);
}

bool tangent_sphere_check(const VolumeSpec& vspec) {
  return std::abs(vspec.c_eps - (2.0 - 3.0 * vspec.epsilon)) <= kAdmissibleTol;
}

}  // namespace polysphere
