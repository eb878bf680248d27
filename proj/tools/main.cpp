// Command-line front end: projection, grid generation, admissibility solving
// and verification, with CSV/OBJ/JSON output.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polysphere/ball_map.hpp"
#include "polysphere/core.hpp"
#include "polysphere/grids.hpp"
#include "polysphere/sphere_map.hpp"
#include "polysphere/verify.hpp"

namespace {

using namespace polysphere;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 2;
  }
  f << content;
  return 0;
}

const char* carrier_name(Carrier c) {
  switch (c) {
    case Carrier::PolySurface:
      return "poly";
    case Carrier::Sphere:
      return "sphere";
    case Carrier::SolidPoly:
      return "solid-poly";
    case Carrier::Ball:
      return "ball";
  }
  return "?";
}

std::string cell_id_str(const CellId& id) {
  std::ostringstream os;
  os << to_string(id.region) << "/" << id.face << "/" << id.row << "/" << id.col
     << "/" << id.level;
  return os.str();
}

std::string grid_header_comment(const Grid& g, char lead) {
  std::ostringstream os;
  os << lead << " carrier=" << carrier_name(g.carrier) << " n=" << g.n << " p=" << g.p
     << " k=" << g.k << " levels=" << g.levels << " r=" << fmt(g.r)
     << " epsilon=" << fmt(g.epsilon) << " cells=" << g.cells.size() << "\n";
  return os.str();
}

std::string grid_csv(const Grid& g) {
  std::ostringstream os;
  os << grid_header_comment(g, '#');
  os << "cell_id,seq,x,y,z\n";
  for (const auto& cell : g.cells) {
    const std::string id = cell_id_str(cell.id);
    for (size_t s = 0; s < cell.boundary.size(); ++s) {
      const Vec3& v = cell.boundary[s];
      os << id << "," << s << "," << fmt(v.x()) << "," << fmt(v.y()) << ","
         << fmt(v.z()) << "\n";
    }
  }
  return os.str();
}

std::string grid_obj(const Grid& g) {
  std::ostringstream os;
  os << grid_header_comment(g, '#');
  long base = 1;  // OBJ indices are 1-based
  const bool solid = g.carrier == Carrier::SolidPoly || g.carrier == Carrier::Ball;
  for (const auto& cell : g.cells) {
    os << "# cell " << cell_id_str(cell.id) << " measure=" << fmt(cell.measure)
       << "\n";
    for (const Vec3& v : cell.boundary) {
      os << "v " << fmt(v.x()) << " " << fmt(v.y()) << " " << fmt(v.z()) << "\n";
    }
    const long m = static_cast<long>(cell.boundary.size());
    if (solid && cell.breaks.empty() && m == 4) {
      // bare tetrahedron: six straight edges
      static const int kEdges[6][2] = {{0, 1}, {1, 2}, {2, 0},
                                       {0, 3}, {1, 3}, {2, 3}};
      for (const auto& e : kEdges) {
        os << "l " << base + e[0] << " " << base + e[1] << "\n";
      }
    } else if (!cell.breaks.empty()) {
      for (size_t b = 0; b < cell.breaks.size(); ++b) {
        const long lo = cell.breaks[b];
        const long hi = b + 1 < cell.breaks.size() ? cell.breaks[b + 1] : m;
        os << "l";
        for (long j = lo; j < hi; ++j) os << " " << base + j;
        os << "\n";
      }
    } else {
      os << "l";
      for (long j = 0; j < m; ++j) os << " " << base + j;
      os << "\n";
    }
    base += m;
  }
  return os.str();
}

std::string grid_json(const Grid& g) {
  std::ostringstream os;
  os << "{\"carrier\":\"" << carrier_name(g.carrier) << "\",\"n\":" << g.n
     << ",\"p\":" << g.p << ",\"k\":" << g.k << ",\"levels\":" << g.levels
     << ",\"r\":" << fmt(g.r) << ",\"epsilon\":" << fmt(g.epsilon)
     << ",\"cells\":[\n";
  for (size_t c = 0; c < g.cells.size(); ++c) {
    const auto& cell = g.cells[c];
    os << "{\"region\":\"" << to_string(cell.id.region)
       << "\",\"face\":" << cell.id.face << ",\"row\":" << cell.id.row
       << ",\"col\":" << cell.id.col << ",\"level\":" << cell.id.level
       << ",\"measure\":" << fmt(cell.measure) << ",\"boundary\":[";
    for (size_t s = 0; s < cell.boundary.size(); ++s) {
      const Vec3& v = cell.boundary[s];
      os << "[" << fmt(v.x()) << "," << fmt(v.y()) << "," << fmt(v.z()) << "]";
      if (s + 1 < cell.boundary.size()) os << ",";
    }
    os << "]}";
    if (c + 1 < g.cells.size()) os << ",";
    os << "\n";
  }
  os << "]}\n";
  return os.str();
}

std::string grid_serialize(const Grid& g, const std::string& format) {
  if (format == "csv") return grid_csv(g);
  if (format == "obj") return grid_obj(g);
  return grid_json(g);
}

// ---------------------------------------------------------------------------
// params / solve-epsilon

int cmd_params(int n, double r, double epsilon, const std::string& out) {
  const PolyhedronSpec spec(n, r, epsilon);
  const DerivedParams d = derive_params(spec);
  const VolumeSpec v(n, r, epsilon);
  std::ostringstream os;
  os << "{\n"
     << "  \"n\": " << n << ",\n"
     << "  \"r\": " << fmt(r) << ",\n"
     << "  \"epsilon\": " << fmt(epsilon) << ",\n"
     << "  \"epsilon_max\": " << fmt(epsilon_max(n)) << ",\n"
     << "  \"edge\": " << fmt(d.edge) << ",\n"
     << "  \"circumradius\": " << fmt(d.circum) << ",\n"
     << "  \"inradius\": " << fmt(d.inradius) << ",\n"
     << "  \"slant\": " << fmt(d.slant) << ",\n"
     << "  \"altitude\": " << fmt(d.altitude) << ",\n"
     << "  \"face_area\": " << fmt(d.face_area) << ",\n"
     << "  \"cap_area\": " << fmt(d.cap_area) << ",\n"
     << "  \"belt_area\": " << fmt(d.belt_area) << ",\n"
     << "  \"c\": " << fmt(v.c_eps) << ",\n"
     << "  \"gamma\": " << fmt(v.gamma) << ",\n"
     << "  \"beta\": " << fmt(v.beta) << ",\n"
     << "  \"xi\": " << fmt(v.xi) << ",\n"
     << "  \"admissible\": " << (v.admissible ? "true" : "false") << "\n"
     << "}\n";
  return emit(out, os.str());
}

int cmd_solve_epsilon(int n, const std::string& out) {
  const auto eps = admissible_epsilons(n);
  std::ostringstream os;
  os << "{\"n\":" << n << ",\"epsilon_max\":" << fmt(epsilon_max(n))
     << ",\"admissible_epsilons\":[";
  for (size_t j = 0; j < eps.size(); ++j) {
    os << fmt(eps[j]);
    if (j + 1 < eps.size()) os << ",";
  }
  os << "]}\n";
  return emit(out, os.str());
}

// ---------------------------------------------------------------------------
// project

int cmd_project(const std::string& direction, int n, double r, double epsilon,
                const std::string& input, const std::string& output) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "error: cannot open input file: " << input << "\n";
    return 2;
  }
  const bool surface = direction == "sphere-to-poly" || direction == "poly-to-sphere";
  const bool forward_dir = direction == "sphere-to-poly" || direction == "poly-to-ball";
  PolyhedronSpec spec(n, r, epsilon);
  VolumeSpec vspec(n, r, epsilon);
  if (!surface && !vspec.admissible) {
    std::cerr << "error: epsilon is not admissible for a volume preserving map\n";
    return 2;
  }

  std::ostringstream os;
  if (surface && forward_dir) {
    os << "X,Y,Z,region,zone\n";
  } else if (!surface && !forward_dir) {
    os << "X,Y,Z,region,zone\n";
  } else {
    os << "x,y,z\n";
  }

  std::string line;
  long lineno = 0;
  bool any_skipped = false;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.pop_back();
    if (trimmed.empty()) continue;
    double x, y, z;
    char extra;
    const int got =
        std::sscanf(trimmed.c_str(), " %lf , %lf , %lf %c", &x, &y, &z, &extra);
    if (got < 3) {
      if (first) {
        first = false;  // optional header line
        continue;
      }
      std::cerr << "line " << lineno << ": not a numeric x,y,z row; skipped\n";
      any_skipped = true;
      continue;
    }
    first = false;
    const Vec3 p(x, y, z);
    try {
      if (direction == "sphere-to-poly") {
        const PolySurfacePoint q = forward(p, spec);
        os << fmt(q.p.x()) << "," << fmt(q.p.y()) << "," << fmt(q.p.z()) << ","
           << to_string(q.region) << "," << q.zone.i << "\n";
      } else if (direction == "poly-to-sphere") {
        const Vec3 s = invert_point(p, spec);
        os << fmt(s.x()) << "," << fmt(s.y()) << "," << fmt(s.z()) << "\n";
      } else if (direction == "ball-to-poly") {
        const SolidPolyPoint q = ball_to_poly(p, vspec);
        os << fmt(q.p.x()) << "," << fmt(q.p.y()) << "," << fmt(q.p.z()) << ","
           << to_string(q.region) << "," << classify_zone(q.p, n).i << "\n";
      } else {  // poly-to-ball
        const Vec3 s = poly_to_ball(p, vspec);
        os << fmt(s.x()) << "," << fmt(s.y()) << "," << fmt(s.z()) << "\n";
      }
    } catch (const std::exception& e) {
      std::cerr << "line " << lineno << ": " << e.what() << "; skipped\n";
      any_skipped = true;
    }
  }
  const int rc = emit(output, os.str());
  if (rc != 0) return rc;
  return any_skipped ? 1 : 0;
}

// ---------------------------------------------------------------------------
// verification suites

std::vector<VerificationReport> suite_area(long samples, std::uint64_t seed) {
  std::vector<VerificationReport> reports;
  if (samples <= 0) samples = 10000;
  const std::pair<int, double> cases[] = {{3, 0.0},       {3, 1.0 / 3.0},
                                          {3, 2.0 / 3.0}, {4, 0.0},
                                          {4, 1.0 / 3.0}, {6, 0.0},
                                          {6, 1.0 / 3.0}};
  for (const auto& [n, eps] : cases) {
    const PolyhedronSpec spec(n, 1.0, eps);
    const double r = spec.r;
    double worst = 0.0;
    std::uint64_t ctr = 0;
    auto u = [&] { return uniform01(seed ^ (std::uint64_t(n) << 32), ctr++); };
    for (long j = 0; j < samples; ++j) {
      const int i = static_cast<int>(j) % n;
      const int band = static_cast<int>(j / n) % (eps > 0.0 ? 3 : 2);
      double zlo, zhi;
      if (band == 0) {
        zlo = eps * r;
        zhi = r;
      } else if (band == 1) {
        zlo = -r;
        zhi = -eps * r;
      } else {
        zlo = -eps * r;
        zhi = eps * r;
      }
      double z1 = zlo + (zhi - zlo) * u();
      double z2 = zlo + (zhi - zlo) * u();
      if (std::abs(z1 - z2) < 1e-6 * r) continue;
      const double a0 = zone_angle(i, n);
      const double width = 2.0 * kPi / n;
      double th1 = a0 + width * (0.001 + 0.998 * u());
      double th2 = a0 + width * (0.001 + 0.998 * u());
      if (std::abs(th1 - th2) < 1e-6) continue;
      auto sph = [&](double z, double th) {
        const double rho = std::sqrt(std::max(0.0, r * r - z * z));
        return Vec3(rho * std::cos(th), rho * std::sin(th), z);
      };
      std::vector<Vec3> quad = {forward(sph(z1, th1), spec).p,
                                forward(sph(z1, th2), spec).p,
                                forward(sph(z2, th2), spec).p,
                                forward(sph(z2, th1), spec).p};
      const double planar = planar_polygon_area(quad);
      const double analytic = r * std::abs(th2 - th1) * std::abs(z1 - z2);
      worst = std::max(worst, std::abs(planar - analytic) / analytic);
    }
    std::ostringstream name;
    name << "area/n=" << n << "/eps=" << fmt(eps);
    reports.push_back(
        VerificationReport::make(name.str(), worst, 0.0, 1e-10, samples, seed));
  }
  return reports;
}

std::vector<VerificationReport> suite_jacobian(int n_flag, long samples,
                                               std::uint64_t seed) {
  std::vector<VerificationReport> reports;
  if (samples <= 0) samples = 1000;
  std::vector<int> ns = n_flag > 0 ? std::vector<int>{n_flag}
                                   : std::vector<int>{3, 4, 5};
  for (int n : ns) {
    for (double eps : admissible_epsilons(n)) {
      const VolumeSpec vspec(n, 1.0, eps);
      double worst = 0.0;
      std::uint64_t ctr = 0;
      long used = 0;
      while (used < samples) {
        const Vec3 p(2.0 * uniform01(seed, ctr) - 1.0,
                     2.0 * uniform01(seed, ctr + 1) - 1.0,
                     2.0 * uniform01(seed, ctr + 2) - 1.0);
        ctr += 3;
        if (p.norm() > 0.9 || p.norm() < 0.05) continue;
        try {
          worst = std::max(worst, std::abs(ball_jacobian_fd(vspec, p, 1e-5) - 1.0));
          ++used;
        } catch (const StepTooLarge&) {
          continue;  // stencil straddles a seam; resample
        }
      }
      std::ostringstream name;
      name << "jacobian/n=" << n << "/eps=" << fmt(eps);
      reports.push_back(
          VerificationReport::make(name.str(), worst, 0.0, 1e-6, used, seed));
    }
  }
  // Non-admissible specs: finite differences must match the closed forms.
  const std::pair<int, double> nonadmissible[] = {{4, 0.4}, {6, 0.3}};
  for (const auto& [n, eps] : nonadmissible) {
    const VolumeSpec vspec(n, 1.0, eps);
    double worst = 0.0;
    std::uint64_t ctr = 1000000;
    long used = 0;
    while (used < std::min<long>(samples, 200)) {
      const Vec3 p(2.0 * uniform01(seed, ctr) - 1.0,
                   2.0 * uniform01(seed, ctr + 1) - 1.0,
                   2.0 * uniform01(seed, ctr + 2) - 1.0);
      ctr += 3;
      if (p.norm() > 0.9 || p.norm() < 0.05) continue;
      const double closed = std::abs(p.z()) > eps * p.norm() ? jacobian_cap(vspec)
                                                             : jacobian_belt(vspec);
      try {
        worst = std::max(worst, std::abs(ball_jacobian_fd(vspec, p, 1e-5) - closed));
        ++used;
      } catch (const StepTooLarge&) {
        continue;
      }
    }
    std::ostringstream name;
    name << "jacobian-closed-form/n=" << n << "/eps=" << fmt(eps);
    reports.push_back(
        VerificationReport::make(name.str(), worst, 0.0, 1e-6, used, seed));
  }
  return reports;
}

std::vector<VerificationReport> suite_seams(int n_flag) {
  std::vector<VerificationReport> reports;
  const double delta = 1e-9;
  std::vector<std::pair<int, double>> cases = {{3, 0.2}, {4, 1.0 / 3.0},
                                               {5, 0.0}, {6, 0.5}};
  if (n_flag > 0) cases = {{n_flag, 0.0}, {n_flag, 1.0 / 3.0}};
  for (const auto& [n, eps] : cases) {
    const PolyhedronSpec spec(n, 1.0, eps);
    const double worst = seam_probe(
        [&](const Vec3& p) { return forward(p, spec).p; },
        sphere_seam_pairs(spec, delta));
    std::ostringstream name;
    name << "seam-sphere/n=" << n << "/eps=" << fmt(eps);
    reports.push_back(VerificationReport::make(name.str(), worst, 0.0, 1e-6));
  }
  std::vector<int> ball_ns = n_flag > 0 ? std::vector<int>{n_flag}
                                        : std::vector<int>{3, 4, 5};
  for (int n : ball_ns) {
    std::vector<double> epss;
    try {
      epss.push_back(smallest_positive_admissible(n));
    } catch (const NotAdmissible&) {
      epss.push_back(0.0);
    }
    for (double eps : epss) {
      const VolumeSpec vspec(n, 1.0, eps);
      const double worst = seam_probe(
          [&](const Vec3& p) { return ball_to_poly(p, vspec).p; },
          ball_seam_pairs(vspec, delta));
      std::ostringstream name;
      name << "seam-ball/n=" << n << "/eps=" << fmt(eps);
      reports.push_back(VerificationReport::make(name.str(), worst, 0.0, 1e-6));
    }
  }
  return reports;
}

std::vector<VerificationReport> suite_healpix() {
  std::vector<VerificationReport> reports;
  for (int k : {1, 2, 4}) {
    double worst = 0.0;
    for (int l = 0; l <= k; ++l) worst = std::max(worst, healpix_residuals(k, l));
    std::ostringstream name;
    name << "healpix/k=" << k;
    reports.push_back(VerificationReport::make(name.str(), worst, 0.0, 1e-12));
  }
  return reports;
}

std::vector<VerificationReport> suite_volume(int n_flag, long samples,
                                             std::uint64_t seed) {
  std::vector<VerificationReport> reports;
  if (samples <= 0) samples = 200000;
  const int n = n_flag > 0 ? n_flag : 4;
  const VolumeSpec vspec(n, 1.0, smallest_positive_admissible(n));
  const BallGrids grids = build_ball_grid(vspec, 1);
  const size_t stride = std::max<size_t>(1, grids.ball.cells.size() / 8);
  for (size_t c = 0; c < grids.ball.cells.size() && reports.size() < 8; c += stride) {
    const auto& tet = grids.poly.cells[c].boundary;  // 4 vertices
    const Vec3 v0 = tet[0], v1 = tet[1], v2 = tet[2], v3 = tet[3];
    Mat3 m;
    m.col(0) = v1 - v0;
    m.col(1) = v2 - v0;
    m.col(2) = v3 - v0;
    const Mat3 minv = m.inverse();
    auto inside = [&](const Vec3& p) {
      if (p.norm() > vspec.r) return false;
      const Vec3 q = ball_to_poly(p, vspec).p;
      const Vec3 bc = minv * (q - v0);
      return bc.x() >= 0.0 && bc.y() >= 0.0 && bc.z() >= 0.0 &&
             bc.sum() <= 1.0;
    };
    Vec3 lo = grids.ball.cells[c].boundary[0], hi = lo;
    for (const Vec3& v : grids.ball.cells[c].boundary) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    const Vec3 pad = 0.05 * (hi - lo) + Vec3::Constant(1e-6);
    const McResult mc =
        monte_carlo_volume(inside, lo - pad, hi + pad, samples, seed + c);
    std::ostringstream name;
    name << "volume-mc/n=" << n << "/cell=" << c;
    reports.push_back(VerificationReport::make(name.str(), mc.estimate,
                                               grids.ball.cells[c].measure,
                                               3.0 * mc.stderr_, samples, seed + c));
  }
  return reports;
}

int cmd_verify(const std::string& suite, int n, long samples, std::uint64_t seed,
               const std::string& out) {
  std::vector<VerificationReport> reports;
  auto append = [&](std::vector<VerificationReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  if (suite == "area" || suite == "all") append(suite_area(samples, seed));
  if (suite == "jacobian" || suite == "all") append(suite_jacobian(n, samples, seed));
  if (suite == "seams" || suite == "all") append(suite_seams(n));
  if (suite == "healpix" || suite == "all") append(suite_healpix());
  if (suite == "volume" || suite == "all") append(suite_volume(n, samples, seed));
  if (reports.empty()) {
    std::cerr << "error: unknown suite: " << suite << "\n";
    return 2;
  }
  const int rc = emit(out, reports_to_json(reports));
  if (rc != 0) return rc;
  for (const auto& r : reports) {
    if (!r.passed) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Area preserving sphere <-> polyhedron maps, volume preserving "
               "ball <-> solid maps, and the uniform grids they generate"};
  app.require_subcommand(1);

  int n = 4, p = 1, k = 1, levels = 0;
  double r = 1.0, epsilon = 0.0;
  long samples = 0;
  std::uint64_t seed = 12345;
  std::string direction = "sphere-to-poly", carrier = "poly", format = "json";
  std::string input, output, suite = "all", epsilon_str = "0";

  auto* c_params = app.add_subcommand("params", "Print derived constants as JSON");
  c_params->add_option("--n", n, "number of prism sides")->required();
  c_params->add_option("--r", r, "sphere radius");
  c_params->add_option("--epsilon", epsilon, "belt fraction");
  c_params->add_option("--output", output, "output file (default stdout)");

  auto* c_project = app.add_subcommand("project", "Map a CSV of points");
  c_project->add_option("--direction", direction)
      ->check(CLI::IsMember({"sphere-to-poly", "poly-to-sphere", "ball-to-poly",
                             "poly-to-ball"}));
  c_project->add_option("--n", n)->required();
  c_project->add_option("--r", r);
  c_project->add_option("--epsilon", epsilon);
  c_project->add_option("--input", input, "input CSV of x,y,z rows")->required();
  c_project->add_option("--output", output, "output CSV (default stdout)");

  auto* c_grid = app.add_subcommand("grid", "Equal-area surface grid");
  c_grid->add_option("--n", n)->required();
  c_grid->add_option("--p", p, "belt rows; epsilon = p/(p+1)")->required();
  c_grid->add_option("--k", k, "per-cell refinement");
  c_grid->add_option("--carrier", carrier)->check(CLI::IsMember({"poly", "sphere"}));
  c_grid->add_option("--format", format)->check(CLI::IsMember({"csv", "obj", "json"}));
  c_grid->add_option("--output", output);

  auto* c_ball = app.add_subcommand("ball-grid", "Equal-volume ball grid");
  c_ball->add_option("--n", n)->required();
  c_ball->add_option("--epsilon", epsilon_str,
                     "belt fraction or 'auto' (smallest positive admissible)");
  c_ball->add_option("--levels", levels, "4-way refinement levels");
  c_ball->add_option("--r", r);
  c_ball->add_option("--carrier", carrier)->check(CLI::IsMember({"poly", "ball"}));
  c_ball->add_option("--format", format)->check(CLI::IsMember({"csv", "obj", "json"}));
  c_ball->add_option("--output", output);

  auto* c_solve = app.add_subcommand("solve-epsilon",
                                     "Admissible belt fractions for n");
  c_solve->add_option("--n", n)->required();
  c_solve->add_option("--output", output);

  auto* c_verify = app.add_subcommand("verify", "Run verification suites");
  c_verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"area", "volume", "jacobian", "seams", "healpix",
                             "all"}));
  c_verify->add_option("--n", n, "restrict to one n (0 = suite defaults)");
  c_verify->add_option("--samples", samples, "sample count (0 = suite default)");
  c_verify->add_option("--seed", seed, "random seed");
  c_verify->add_option("--output", output);

  int verify_n = 0;
  c_verify->callback([&] { verify_n = c_verify->count("--n") ? n : 0; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_params->parsed()) return cmd_params(n, r, epsilon, output);
    if (c_project->parsed())
      return cmd_project(direction, n, r, epsilon, input, output);
    if (c_grid->parsed()) {
      Grid g = build_surface_grid(n, p, k);
      if (carrier == "sphere") {
        g = grid_to_sphere(g, PolyhedronSpec(n, 1.0, g.epsilon));
      }
      return emit(output, grid_serialize(g, format));
    }
    if (c_ball->parsed()) {
      double eps;
      if (epsilon_str == "auto") {
        eps = smallest_positive_admissible(n);
      } else {
        size_t pos = 0;
        eps = std::stod(epsilon_str, &pos);
        if (pos != epsilon_str.size()) {
          std::cerr << "error: --epsilon must be a number or 'auto'\n";
          return 2;
        }
      }
      const VolumeSpec vspec(n, r, eps);
      const BallGrids grids = build_ball_grid(vspec, levels);
      const Grid& g = carrier == "ball" ? grids.ball : grids.poly;
      return emit(output, grid_serialize(g, format));
    }
    if (c_solve->parsed()) return cmd_solve_epsilon(n, output);
    if (c_verify->parsed())
      return cmd_verify(suite, verify_n, samples, seed, output);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidEpsilon& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotAdmissible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
