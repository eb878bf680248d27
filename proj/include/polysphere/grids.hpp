#ifndef POLYSPHERE_GRIDS_HPP
#define POLYSPHERE_GRIDS_HPP

#include <array>
#include <utility>
#include <vector>

#include "polysphere/ball_map.hpp"
#include "polysphere/core.hpp"

namespace polysphere {

struct InvalidEpsilon : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Carrier { PolySurface, Sphere, SolidPoly, Ball };

/// Cell address. For surface grids, `face` is the position of the base rhombus
/// along its ring, `row`/`col` are the sub-cell indices of the k^2 refinement
/// (row also encodes the base ring: row = ring * k + sub-row) and `level` is k.
/// For ball grids, `face` is the base tetrahedron index, `row` the child index
/// within the refinement tree and `level` the number of 4-way refinements.
struct CellId {
  Region region = Region::Prism;
  int face = 0;
  int row = 0;
  int col = 0;
  int level = 1;
};

struct GridCell {
  CellId id;
  std::vector<Vec3> boundary;  // surface cells: one closed polyline (first ==
                               // last); solid cells: sampled edges, one run per
                               // entry of `breaks`
  std::vector<int> breaks;     // start index of each polyline run; empty means
                               // a single run
  double measure = 0.0;        // area for surface carriers, volume for solid ones
};

struct Grid {
  Carrier carrier = Carrier::PolySurface;
  int n = 0;
  int p = 0;
  int k = 1;
  int levels = 0;
  double r = 1.0;
  double epsilon = 0.0;
  std::vector<GridCell> cells;
};

/// Belt fraction that makes all rhombic cells share one area: eps = p/(p+1).
double epsilon_for(int p);

/// Equal-area rhombic grid on K_n(1, p/(p+1)), n*(p+1) base rhombi each split
/// into k^2 equal sub-cells. Base rhombi: n paired with the north pyramid
/// faces, n*(p-1) on the prism, n paired with the south pyramid faces (the
/// south pairing is rotated by pi/n when p is odd, so the bottom half-cells
/// close into full rhombi). Throws InvalidEpsilon when p/(p+1) >= eps_max(n).
Grid build_surface_grid(int n, int p, int k);

/// Transport a polyhedron-surface grid to S^2(r): boundaries are sampled
/// adaptively (max sphere-side chord 1e-3 * r) and mapped through the inverse
/// area preserving map; measures become spherical areas from the line-integral
/// oracle.
Grid grid_to_sphere(const Grid& g, const PolyhedronSpec& spec);

struct FaceParam {
  double u = 0.0;  // weight of vertex alpha_i
  double v = 0.0;  // weight of vertex alpha_{i+1}; u in [0,1], v in [0,1-u]
  int face = 0;
};

/// Point of the north pyramid face (u,v) and its image on the sphere
/// (closed form; u = v = 0 gives the apex/pole pair).
std::pair<PolySurfacePoint, Vec3> pyramid_face_point(const FaceParam& fp,
                                                     const PolyhedronSpec& spec);

/// Max residual of the grid curves u = l/k, v = l/k (pyramid) and the prism
/// grid lines against the HEALPix iso-latitude curve equations, at n = 4,
/// p = 2 (eps = 2/3). Uses the closed-form spherical images, which stay valid
/// even though K_4(1, 2/3) itself is degenerate. l = 0 curves degenerate; their
/// residual is 0 by convention.
double healpix_residuals(int k, int l, int curve_samples = 256);

struct BallGrids {
  Grid poly;  // tetrahedra of the solid polyhedron K_n(r*xi, eps)
  Grid ball;  // their images in the ball of radius r
};

/// 4n base tetrahedra with apex at the origin (2n over pyramid faces, 2n over
/// the diagonal-triangulated prism faces; for eps = 0 the prism is empty and
/// each pyramid face is split by its apex median instead, keeping the count
/// and making all volumes equal). Each refinement level splits every
/// tetrahedron at its centroid into four children of exactly V/4.
BallGrids build_ball_grid(const VolumeSpec& vspec, int levels);

}  // namespace polysphere

#endif
