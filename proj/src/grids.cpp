#include "polysphere/grids.hpp"

#include <cmath>

#include "polysphere/sphere_map.hpp"
#include "polysphere/verify.hpp"

namespace polysphere {

namespace {

double newell_area(const std::vector<Vec3>& poly) {
  Vec3 nv = Vec3::Zero();
  for (size_t j = 0; j < poly.size(); ++j) {
    nv += poly[j].cross(poly[(j + 1) % poly.size()]);
  }
  return 0.5 * nv.norm();
}

// One base rhombus, seen as the unit diamond |du| + |dw| <= 1 of the cell
// lattice. The map to the surface is affine on each quadrant and preserves
// area uniformly (every quadrant triangle carries exactly A_cell / 4), so any
// equal-area subdivision of the diamond transports to an equal-area
// subdivision of the surface cell.
struct BaseCell {
  Region region = Region::Prism;
  int ring = 0;
  Vec3 C, T, L, B, R;  // center and the four diamond corners

  Vec3 map(double du, double dw) const {
    const Vec3 gu = du >= 0.0 ? (R - C) : (C - L);
    const Vec3 gw = dw >= 0.0 ? (B - C) : (C - T);
    return C + du * gu + dw * gw;
  }
};

std::vector<BaseCell> make_base_cells(int n, int p, const PolyhedronSpec& spec) {
  const DerivedParams d = derive_params(spec);
  const double eps = spec.epsilon;
  auto vertex = [&](int j) {
    j = ((j % n) + n) % n;
    const double a = zone_angle(j, n);
    return Vec3(d.circum * std::cos(a), d.circum * std::sin(a), 0.0);
  };
  // Development lattice: half-edge columns iu in [0, 2n), strip rows iw in
  // [0, p]. Even iu sits on a vertical prism edge, odd iu on a face midline.
  auto dev = [&](int iu, int iw) {
    const int m = ((iu % (2 * n)) + 2 * n) % (2 * n);
    Vec3 q = (m % 2 == 0) ? vertex(m / 2) : 0.5 * (vertex((m - 1) / 2) + vertex((m + 1) / 2));
    q.z() = eps * spec.r - iw * (2.0 * eps * spec.r / p);
    return q;
  };
  const Vec3 apex_n(0.0, 0.0, eps * spec.r + d.altitude);
  const Vec3 apex_s(0.0, 0.0, -eps * spec.r - d.altitude);

  std::vector<BaseCell> cells;
  cells.reserve(static_cast<size_t>(n) * (p + 1));
  for (int wc = 0; wc <= p; ++wc) {
    const int uc0 = (wc % 2 == 0) ? 1 : 0;  // diamond centers have uc+wc odd
    for (int t = 0; t < n; ++t) {
      const int uc = uc0 + 2 * t;
      BaseCell c;
      c.ring = t;
      c.C = dev(uc, wc);
      c.L = dev(uc - 1, wc);
      c.R = dev(uc + 1, wc);
      if (wc == 0) {
        c.region = Region::PyramidPlus;
        c.T = apex_n;
      } else {
        c.T = dev(uc, wc - 1);
      }
      if (wc == p) {
        // For odd p the diamond centers of this row sit on the vertical
        // edges, which is exactly the pi/n-rotated south pairing.
        c.region = Region::PyramidMinus;
        c.B = apex_s;
      } else {
        c.B = dev(uc, wc + 1);
      }
      if (wc > 0 && wc < p) c.region = Region::Prism;
      cells.push_back(c);
    }
  }
  return cells;
}

using Poly2 = std::vector<Eigen::Vector2d>;

Poly2 clip_halfplane(const Poly2& poly, const Eigen::Vector2d& normal, double sign) {
  // keep points with sign * (normal . q) >= 0
  Poly2 out;
  const size_t m = poly.size();
  for (size_t j = 0; j < m; ++j) {
    const Eigen::Vector2d& a = poly[j];
    const Eigen::Vector2d& b = poly[(j + 1) % m];
    const double da = sign * normal.dot(a);
    const double db = sign * normal.dot(b);
    if (da >= 0.0) out.push_back(a);
    if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
      const double s = da / (da - db);
      out.push_back(a + s * (b - a));
    }
  }
  return out;
}

double piecewise_area(const BaseCell& cell, const Poly2& poly_lattice) {
  double area = 0.0;
  for (double su : {-1.0, 1.0}) {
    for (double sw : {-1.0, 1.0}) {
      Poly2 piece = clip_halfplane(poly_lattice, Eigen::Vector2d(1, 0), su);
      piece = clip_halfplane(piece, Eigen::Vector2d(0, 1), sw);
      if (piece.size() < 3) continue;
      std::vector<Vec3> mapped;
      mapped.reserve(piece.size());
      for (const auto& q : piece) {
        // nudge onto the owning quadrant for the gradient choice
        const double du = q.x() == 0.0 ? su * 1e-300 : q.x();
        const double dw = q.y() == 0.0 ? sw * 1e-300 : q.y();
        mapped.push_back(cell.map(du, dw));
      }
      area += newell_area(mapped);
    }
  }
  return area;
}

// Boundary of the (ai, bi) sub-cell as lattice points, split where it crosses
// the quadrant seams du = 0 / dw = 0 so every segment maps to a straight one.
std::vector<Eigen::Vector2d> subcell_boundary_lattice(int k, int ai, int bi) {
  auto lat = [&](double a, double b) {
    return Eigen::Vector2d(a + b - 1.0, a - b);
  };
  const Eigen::Vector2d corners[4] = {
      lat(double(ai) / k, double(bi) / k), lat(double(ai + 1) / k, double(bi) / k),
      lat(double(ai + 1) / k, double(bi + 1) / k), lat(double(ai) / k, double(bi + 1) / k)};
  std::vector<Eigen::Vector2d> out;
  for (int e = 0; e < 4; ++e) {
    const Eigen::Vector2d& a = corners[e];
    const Eigen::Vector2d& b = corners[(e + 1) % 4];
    out.push_back(a);
    std::vector<double> ss;
    for (int c = 0; c < 2; ++c) {
      const double va = a[c], vb = b[c];
      if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) {
        ss.push_back(va / (va - vb));
      }
    }
    if (ss.size() == 2 && ss[0] > ss[1]) std::swap(ss[0], ss[1]);
    for (double s : ss) out.push_back(a + s * (b - a));
  }
  return out;
}

}  // namespace

double epsilon_for(int p) {
  if (p < 1) throw std::invalid_argument("epsilon_for: p must be >= 1");
  return double(p) / (p + 1);
}

Grid build_surface_grid(int n, int p, int k) {
  if (n < 3 || p < 1 || k < 1) {
    throw std::invalid_argument("build_surface_grid: need n >= 3, p >= 1, k >= 1");
  }
  const double eps = epsilon_for(p);
  if (eps >= epsilon_max(n)) {
    throw InvalidEpsilon("build_surface_grid: p/(p+1) = " + std::to_string(eps) +
                         " >= epsilon_max(" + std::to_string(n) + ") = " +
                         std::to_string(epsilon_max(n)));
  }
  const PolyhedronSpec spec(n, 1.0, eps);
  Grid g;
  g.carrier = Carrier::PolySurface;
  g.n = n;
  g.p = p;
  g.k = k;
  g.r = 1.0;
  g.epsilon = eps;
  const auto base = make_base_cells(n, p, spec);
  for (size_t bc = 0; bc < base.size(); ++bc) {
    const BaseCell& cell = base[bc];
    const int wc = static_cast<int>(bc) / n;
    for (int ai = 0; ai < k; ++ai) {
      for (int bi = 0; bi < k; ++bi) {
        GridCell out;
        out.id.region = cell.region;
        out.id.face = cell.ring;
        out.id.row = wc * k + ai;
        out.id.col = bi;
        out.id.level = k;
        const auto lattice = subcell_boundary_lattice(k, ai, bi);
        for (const auto& q : lattice) out.boundary.push_back(cell.map(q.x(), q.y()));
        out.boundary.push_back(out.boundary.front());
        Poly2 quad = {lattice.begin(), lattice.end()};
        out.measure = piecewise_area(cell, quad);
        g.cells.push_back(std::move(out));
      }
    }
  }
  return g;
}

namespace {

void refine_to_sphere(const Vec3& pa, const Vec3& pb, const Vec3& sa, const Vec3& sb,
                      const PolyhedronSpec& spec, double max_chord,
                      std::vector<Vec3>& out, int depth = 0) {
  if ((sa - sb).norm() <= max_chord || depth > 24) {
    out.push_back(sb);
    return;
  }
  const Vec3 pm = 0.5 * (pa + pb);
  const Vec3 sm = invert_point(pm, spec);
  refine_to_sphere(pa, pm, sa, sm, spec, max_chord, out, depth + 1);
  refine_to_sphere(pm, pb, sm, sb, spec, max_chord, out, depth + 1);
}

// Trapezoid value of Int (1 - cos phi) dtheta along the sphere image of the
// straight segment [pa, pb] (which lies in a single face, so the image is
// smooth), at m uniform parameter steps.
double segment_trapezoid(const Vec3& pa, const Vec3& pb, const PolyhedronSpec& spec,
                         int m) {
  const double r = spec.r;
  double sum = 0.0;
  Vec3 s_prev = invert_point(pa, spec);
  double th_prev = std::atan2(s_prev.y(), s_prev.x());
  double w_prev = 1.0 - s_prev.z() / r;
  for (int j = 1; j <= m; ++j) {
    const double t = double(j) / m;
    const Vec3 s = invert_point(pa + t * (pb - pa), spec);
    double th = std::atan2(s.y(), s.x());
    double dth = th - th_prev;
    while (dth > kPi) dth -= 2.0 * kPi;
    while (dth <= -kPi) dth += 2.0 * kPi;
    const double w = 1.0 - s.z() / r;
    sum += 0.5 * (w_prev + w) * dth;
    th_prev = th_prev + dth;
    w_prev = w;
  }
  return sum;
}

// Spherical area of a surface cell, integrated segment by segment on the
// polyhedron side. Trapezoid sums at h and h/2 are Richardson-extrapolated to
// O(h^4). Segments ending at an apex map to meridian arcs (d theta = 0) and
// contribute nothing; a corner at the south pole contributes the exact jump
// 2 * (theta_out - theta_in) instead.
double cell_sphere_area(const std::vector<Vec3>& poly_boundary,
                        const PolyhedronSpec& spec, double max_chord) {
  const double r = spec.r;
  const size_t m = poly_boundary.size() - 1;  // closed: last == first
  auto is_apex = [&](const Vec3& q) {
    return std::hypot(q.x(), q.y()) < 1e-12 * r;
  };
  auto azimuth_of_meridian = [&](const Vec3& q_other) {
    const Vec3 s = invert_point(q_other, spec);
    return std::atan2(s.y(), s.x());
  };
  double total = 0.0;
  for (size_t j = 0; j < m; ++j) {
    const Vec3& a = poly_boundary[j];
    const Vec3& b = poly_boundary[j + 1];
    if (is_apex(a) || is_apex(b)) {
      if (is_apex(a) && a.z() < 0.0) {
        // south pole corner: exact jump between the incoming and outgoing
        // meridians, weighted by w = 1 - cos(pi) = 2
        const Vec3& in_pt = poly_boundary[j == 0 ? m - 1 : j - 1];
        double dth = azimuth_of_meridian(b) - azimuth_of_meridian(in_pt);
        while (dth > kPi) dth -= 2.0 * kPi;
        while (dth <= -kPi) dth += 2.0 * kPi;
        total += 2.0 * dth;
      }
      continue;  // meridian arcs carry no d theta
    }
    const double chord = (invert_point(a, spec) - invert_point(b, spec)).norm();
    int steps = static_cast<int>(std::ceil(2.0 * chord / max_chord));
    steps = std::max(8, std::min(steps, 1 << 14));
    if (steps % 2) ++steps;
    const double coarse = segment_trapezoid(a, b, spec, steps / 2);
    const double fine = segment_trapezoid(a, b, spec, steps);
    total += (4.0 * fine - coarse) / 3.0;
  }
  return std::abs(r * r * total);
}

}  // namespace

Grid grid_to_sphere(const Grid& g, const PolyhedronSpec& spec) {
  if (g.carrier != Carrier::PolySurface || g.n != spec.n ||
      std::abs(g.epsilon - spec.epsilon) > 1e-12 || std::abs(g.r - spec.r) > 1e-12) {
    throw std::invalid_argument("grid_to_sphere: grid does not match the spec");
  }
  const double max_chord = 1e-3 * spec.r;
  Grid out = g;
  out.carrier = Carrier::Sphere;
  for (size_t c = 0; c < g.cells.size(); ++c) {
    const auto& bnd = g.cells[c].boundary;
    std::vector<Vec3> dense;
    dense.push_back(invert_point(bnd.front(), spec));
    for (size_t j = 0; j + 1 < bnd.size(); ++j) {
      refine_to_sphere(bnd[j], bnd[j + 1], dense.back(),
                       invert_point(bnd[j + 1], spec), spec, max_chord, dense);
    }
    out.cells[c].boundary = dense;
    out.cells[c].measure = cell_sphere_area(bnd, spec, max_chord);
  }
  return out;
}

std::pair<PolySurfacePoint, Vec3> pyramid_face_point(const FaceParam& fp,
                                                     const PolyhedronSpec& spec) {
  if (fp.u < -1e-12 || fp.v < -1e-12 || fp.u + fp.v > 1.0 + 1e-12) {
    throw DomainError("pyramid_face_point: (u, v) outside the face triangle");
  }
  const DerivedParams d = derive_params(spec);
  const double r = spec.r;
  const double eps = spec.epsilon;
  const double a0 = zone_angle(fp.face, spec.n);
  const double a1 = zone_angle(fp.face + 1, spec.n);
  PolySurfacePoint q;
  q.p = Vec3(fp.u * d.circum * std::cos(a0) + fp.v * d.circum * std::cos(a1),
             fp.u * d.circum * std::sin(a0) + fp.v * d.circum * std::sin(a1),
             eps * r + d.altitude * (1.0 - fp.u - fp.v));
  q.region = Region::PyramidPlus;
  q.zone = ZoneTag{((fp.face % spec.n) + spec.n) % spec.n, Hemisphere::North};
  Vec3 s;
  const double uv = fp.u + fp.v;
  if (uv == 0.0) {
    s = Vec3(0.0, 0.0, r);  // apex -> pole
  } else {
    const double z = r * (1.0 - (1.0 - eps) * uv * uv);
    const double ang = 2.0 * kPi / spec.n * fp.v / uv + a0;
    const double rho = std::sqrt(std::max(0.0, r * r - z * z));
    s = Vec3(rho * std::cos(ang), rho * std::sin(ang), z);
  }
  return {q, s};
}

double healpix_residuals(int k, int l, int curve_samples) {
  if (k < 1 || l < 0 || l > k) {
    throw std::invalid_argument("healpix_residuals: need k >= 1, 0 <= l <= k");
  }
  const int n = 4;
  const double eps = 2.0 / 3.0;
  const double quad = kPi / 2.0;  // zone width for n = 4
  const double frac = double(l) / k;
  double worst = 0.0;

  auto theta_t = [&](double ang) {
    double t = std::fmod(ang, quad);
    if (t < 0.0) t += quad;
    return t;
  };

  for (int i = 0; i < n; ++i) {
    const double ai = zone_angle(i, n);
    if (l != 0) {
      for (int s = 0; s <= curve_samples; ++s) {
        // curve u = l/k
        {
          const double v = (1.0 - frac) * s / curve_samples;
          const double uv = frac + v;
          const double z = 1.0 - (1.0 - eps) * uv * uv;
          const double tt = theta_t(2.0 * kPi / n * v / uv + ai);
          // the theta_t branch is ambiguous exactly at the quadrant boundary
          double best = 1e300;
          for (double cand : {tt, tt - quad, tt + quad}) {
            const double den = 2.0 * cand - kPi;
            if (den == 0.0) continue;
            best = std::min(best,
                            std::abs(z - (1.0 - frac * frac / 3.0 * (kPi / den) * (kPi / den))));
          }
          worst = std::max(worst, best);
        }
        // curve v = l/k
        {
          const double u = (1.0 - frac) * s / curve_samples;
          const double uv = u + frac;
          const double z = 1.0 - (1.0 - eps) * uv * uv;
          const double tt = theta_t(2.0 * kPi / n * frac / uv + ai);
          double best = 1e300;
          for (double cand : {tt, tt + quad}) {
            if (cand == 0.0) continue;
            best = std::min(best,
                            std::abs(z - (1.0 - frac * frac / 3.0 * (kPi / (2.0 * cand)) *
                                                    (kPi / (2.0 * cand)))));
          }
          worst = std::max(worst, best);
        }
      }
    }
    // prism grid lines (straight chords between the p = 2 rhombus corners,
    // mapped through the zone-i inverse Lambert formula)
    const double circum = kPi / (n * std::sin(kPi / n));
    auto ring_pt = [&](double s, double z) {
      const double a1 = zone_angle(i + 1, n);
      return Vec3((1.0 - s) * circum * std::cos(ai) + s * circum * std::cos(a1),
                  (1.0 - s) * circum * std::sin(ai) + s * circum * std::sin(a1), z);
    };
    for (double sign : {1.0, -1.0}) {
      const Vec3 U = ring_pt(frac, eps);
      const Vec3 Q = ring_pt(frac + sign, -eps);
      for (int s = 0; s <= curve_samples; ++s) {
        const double t = double(s) / curve_samples;
        const Vec3 P = U + t * (Q - U);
        const double yl = P.y() * std::cos(ai) - P.x() * std::sin(ai);
        const double ang = yl / std::cos(kPi / n) + ai;
        const double z = P.z();
        const double tt = theta_t(ang);
        double best = 1e300;
        for (double sgn : {1.0, -1.0}) {
          for (int shift : {-1, 0, 1}) {
            const double pred =
                2.0 / 3.0 + sgn * 4.0 / 3.0 * (2.0 * tt / kPi - frac + shift);
            best = std::min(best, std::abs(z - pred));
          }
        }
        worst = std::max(worst, best);
      }
    }
  }
  return worst;
}

namespace {

struct Tet {
  std::array<Vec3, 4> v;
  Region region;
  int face;
  int col;
};

double tet_volume(const Tet& t) {
  return std::abs((t.v[1] - t.v[0]).dot((t.v[2] - t.v[0]).cross(t.v[3] - t.v[0]))) / 6.0;
}

void refine_ball_edge(const Vec3& pa, const Vec3& pb, const Vec3& sa, const Vec3& sb,
                      const VolumeSpec& vspec, double max_chord, std::vector<Vec3>& out,
                      int depth = 0) {
  if ((sa - sb).norm() <= max_chord || depth > 24) {
    out.push_back(sb);
    return;
  }
  const Vec3 pm = 0.5 * (pa + pb);
  const Vec3 sm = poly_to_ball(pm, vspec);
  refine_ball_edge(pa, pm, sa, sm, vspec, max_chord, out, depth + 1);
  refine_ball_edge(pm, pb, sm, sb, vspec, max_chord, out, depth + 1);
}

}  // namespace

BallGrids build_ball_grid(const VolumeSpec& vspec, int levels) {
  if (!vspec.admissible) {
    throw NotAdmissible("build_ball_grid: epsilon is not admissible for n = " +
                        std::to_string(vspec.n));
  }
  if (levels < 0) throw std::invalid_argument("build_ball_grid: levels must be >= 0");
  const int n = vspec.n;
  const double shell = vspec.r * vspec.xi;
  const PolyhedronSpec outer(n, shell, vspec.epsilon);
  const DerivedParams d = derive_params(outer);
  const double er = vspec.epsilon * shell;
  auto top = [&](int j) {
    const double a = zone_angle(((j % n) + n) % n, n);
    return Vec3(d.circum * std::cos(a), d.circum * std::sin(a), er);
  };
  auto bot = [&](int j) {
    Vec3 q = top(j);
    q.z() = -er;
    return q;
  };
  const Vec3 origin = Vec3::Zero();
  const Vec3 apex_n(0.0, 0.0, er + d.altitude);
  const Vec3 apex_s(0.0, 0.0, -er - d.altitude);

  std::vector<Tet> tets;
  if (vspec.epsilon == 0.0) {
    // No prism: split each pyramid face by its apex median, keeping 4n
    // tetrahedra which are then all of equal volume.
    for (int j = 0; j < n; ++j) {
      const Vec3 mid = 0.5 * (top(j) + top(j + 1));
      tets.push_back({{origin, apex_n, top(j), mid}, Region::PyramidPlus, j, 0});
      tets.push_back({{origin, apex_n, mid, top(j + 1)}, Region::PyramidPlus, j, 1});
      tets.push_back({{origin, apex_s, top(j), mid}, Region::PyramidMinus, j, 0});
      tets.push_back({{origin, apex_s, mid, top(j + 1)}, Region::PyramidMinus, j, 1});
    }
  } else {
    for (int j = 0; j < n; ++j) {
      tets.push_back({{origin, apex_n, top(j), top(j + 1)}, Region::PyramidPlus, j, 0});
      tets.push_back({{origin, apex_s, bot(j), bot(j + 1)}, Region::PyramidMinus, j, 0});
      // prism face diagonal runs lower-left to upper-right in the face frame
      tets.push_back({{origin, top(j), top(j + 1), bot(j)}, Region::Prism, j, 0});
      tets.push_back({{origin, bot(j), top(j + 1), bot(j + 1)}, Region::Prism, j, 1});
    }
  }

  for (int lv = 0; lv < levels; ++lv) {
    std::vector<Tet> next;
    next.reserve(tets.size() * 4);
    for (const Tet& t : tets) {
      const Vec3 g = 0.25 * (t.v[0] + t.v[1] + t.v[2] + t.v[3]);
      for (int drop = 0; drop < 4; ++drop) {
        Tet c = t;
        c.v[drop] = g;
        next.push_back(c);
      }
    }
    tets.swap(next);
  }

  BallGrids out;
  out.poly.carrier = Carrier::SolidPoly;
  out.ball.carrier = Carrier::Ball;
  for (Grid* g : {&out.poly, &out.ball}) {
    g->n = n;
    g->epsilon = vspec.epsilon;
    g->r = vspec.r;
    g->levels = levels;
  }
  const double max_chord = 1e-3 * vspec.r;
  const int per_base = 1 << (2 * levels);  // 4^levels
  static const int kEdges[6][2] = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}};
  for (size_t idx = 0; idx < tets.size(); ++idx) {
    const Tet& t = tets[idx];
    GridCell pc;
    pc.id.region = t.region;
    pc.id.face = t.face;
    pc.id.col = t.col;
    pc.id.row = static_cast<int>(idx) % per_base;
    pc.id.level = levels;
    pc.boundary.assign(t.v.begin(), t.v.end());
    pc.measure = tet_volume(t);
    GridCell bc;
    bc.id = pc.id;
    bc.measure = pc.measure;  // the volume preserving map has unit Jacobian
    for (const auto& e : kEdges) {
      const Vec3 sa = poly_to_ball(t.v[e[0]], vspec);
      const Vec3 sb = poly_to_ball(t.v[e[1]], vspec);
      bc.breaks.push_back(static_cast<int>(bc.boundary.size()));
      bc.boundary.push_back(sa);
      refine_ball_edge(t.v[e[0]], t.v[e[1]], sa, sb, vspec, max_chord, bc.boundary);
    }
    out.poly.cells.push_back(std::move(pc));
    out.ball.cells.push_back(std::move(bc));
  }
  return out;
}

}  // namespace polysphere
