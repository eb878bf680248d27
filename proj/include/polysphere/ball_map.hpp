#ifndef POLYSPHERE_BALL_MAP_HPP
#define POLYSPHERE_BALL_MAP_HPP

#include <functional>
#include <vector>

#include "polysphere/core.hpp"

namespace polysphere {

/// Parameters of the volume preserving map V_n : ball(r) -> solid K_n(r*xi, eps).
///
/// The map is a radial scaling by xi = (beta/gamma)^(1/3) followed by the
/// shell-by-shell area preserving map; its Jacobian is identically 1 exactly
/// when eps = 0 or c(eps) = 2 - 3*eps (the polyhedron circumscribes a sphere
/// tangent to all faces).
struct VolumeSpec {
  int n;
  double r;
  double epsilon;
  double c_eps;   // c(eps) = b_n / rho, the altitude per unit shell radius
  double gamma;   // vol(solid K_n(rho, eps)) / rho^3
  double beta;    // vol(ball(rho)) / rho^3 = 4*pi/3
  double xi;      // (beta/gamma)^(1/3)
  bool admissible;

  VolumeSpec(int n_, double r_, double epsilon_);
};

/// eps = 0 plus the real roots of 5*eps^2 - 4*eps + q = 0 in (0, eps_max(n)]
/// with q = (pi/n)^2 cot^2(pi/n); roots above 2/3 are spurious (squaring
/// artifacts with c(eps) = 2 - 3*eps < 0). Sorted ascending.
std::vector<double> admissible_epsilons(int n);

/// Smallest positive admissible epsilon, or an empty optional-style throw.
double smallest_positive_admissible(int n);

struct SolidPolyPoint {
  Vec3 p;
  double shell_rho = 0.0;  // radius of the K_n shell containing the point
  Region region = Region::Prism;
};

SolidPolyPoint ball_to_poly(const Vec3& p, const VolumeSpec& vspec,
                            bool unchecked = false);
Vec3 poly_to_ball(const Vec3& q, const VolumeSpec& vspec, bool unchecked = false);

/// Central-difference 3x3 Jacobian determinant of an R^3 -> R^3 map.
double jacobian_fd(const std::function<Vec3(const Vec3&)>& map, const Vec3& p,
                   double step);

/// jacobian_fd of ball_to_poly with a stencil guard: throws StepTooLarge when
/// p +- step crosses a zone plane or the cap/belt boundary.
double ball_jacobian_fd(const VolumeSpec& vspec, const Vec3& p, double step);

/// Closed-form Jacobian of V_n in the cap zones (Case 1).
double jacobian_cap(const VolumeSpec& vspec);
/// Closed-form Jacobian of V_n in the belt zone (Case 2).
double jacobian_belt(const VolumeSpec& vspec);

/// True iff every shell K_n(rho, eps) is tangent to an inscribed sphere,
/// i.e. b_n = rho*(2 - 3*eps). Coincides with admissibility for eps > 0.
bool tangent_sphere_check(const VolumeSpec& vspec);

}  // namespace polysphere

#endif
