#include "entroscope/geometry.hpp"

#include <cmath>
#include <numbers>

namespace entroscope::geom {

namespace {

constexpr double kPi = std::numbers::pi;

double polygon_signed_area(const std::vector<std::array<double, 2>>& v) {
  double a = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % n];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

// Proper segment intersection test for the self-intersection guard.
bool segments_cross(const std::array<double, 2>& a, const std::array<double, 2>& b,
                    const std::array<double, 2>& c, const std::array<double, 2>& d) {
  auto orient = [](const std::array<double, 2>& p, const std::array<double, 2>& q,
                   const std::array<double, 2>& r) {
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
  };
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 &&
         o3 != 0 && o4 != 0;
}

void validate_polyline(const Polyline& p) {
  const auto& v = p.vertices;
  if (v.size() < 3) throw domain_error("polyline needs at least 3 vertices");
  if (std::abs(polygon_signed_area(v)) <= 0.0)
    throw domain_error("polyline is degenerate (zero enclosed area)");
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    if (a == b) throw domain_error("polyline has a zero-length edge");
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex and may not be tested as crossings.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_cross(a, b, v[j], v[(j + 1) % n]))
        throw domain_error("polyline is self-intersecting");
    }
  }
}

int required_dim(const ShapeSpec& shape) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Interval>) return 1;
        else if constexpr (std::is_same_v<T, Sphere>) return 3;
        else return 2;
      },
      shape);
}

// Splits n panels over pieces proportionally to their lengths, at least one
// panel per piece.
std::vector<int> apportion(int n, const std::vector<double>& lengths) {
  double total = 0.0;
  for (double l : lengths) total += l;
  std::vector<int> out(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i)
    out[i] = std::max(1, static_cast<int>(std::lround(n * lengths[i] / total)));
  return out;
}

void append_segment_panels(std::vector<Panel>& panels, const std::array<double, 2>& a,
                           const std::array<double, 2>& b, int n, bool flip_normal) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len = std::hypot(dx, dy);
  // Outward normal for counterclockwise traversal is to the right of travel.
  double nx = dy / len;
  double ny = -dx / len;
  if (flip_normal) {
    nx = -nx;
    ny = -ny;
  }
  const double w = len / n;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) / n;
    panels.push_back(Panel{{a[0] + t * dx, a[1] + t * dy, 0.0}, {nx, ny, 0.0}, w});
  }
}

BoundaryMesh mesh_polyline(const std::vector<std::array<double, 2>>& v, int n_panels) {
  const std::size_t n = v.size();
  const bool ccw = polygon_signed_area(v) > 0.0;
  std::vector<double> lengths(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    lengths[i] = std::hypot(b[0] - a[0], b[1] - a[1]);
  }
  const std::vector<int> counts = apportion(n_panels, lengths);
  std::vector<Panel> panels;
  for (std::size_t i = 0; i < n; ++i)
    append_segment_panels(panels, v[i], v[(i + 1) % n], counts[i], !ccw);
  return BoundaryMesh::from_panels(2, std::move(panels));
}

BoundaryMesh mesh_circle(double R, int n) {
  std::vector<Panel> panels;
  panels.reserve(n);
  const double w = 2.0 * kPi * R / n;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * (k + 0.5) / n;
    const double c = std::cos(th), s = std::sin(th);
    panels.push_back(Panel{{R * c, R * s, 0.0}, {c, s, 0.0}, w});
  }
  return BoundaryMesh::from_panels(2, std::move(panels));
}

// Latitude bands split azimuthally in proportion to their circumference so
// cells stay near-square; weights are the exact cell areas and sum to the
// full sphere. Band widths and phases carry a deterministic low-discrepancy
// stagger: a rigid theta lattice would make whole families of panel pairs
// cross a chordal cutoff at once, which is poison for the cutoff-regulated
// double sums this mesh feeds.
BoundaryMesh mesh_sphere(double R, int n) {
  const int bands = std::max(2, static_cast<int>(std::lround(0.5 * std::sqrt(kPi * n))));
  std::vector<double> widths(bands);
  double total_width = 0.0;
  for (int k = 0; k < bands; ++k) {
    const double u = std::fmod(0.6180339887498949 * (k + 1), 1.0);
    widths[k] = 1.0 + 0.6 * (u - 0.5);
    total_width += widths[k];
  }
  std::vector<Panel> panels;
  panels.reserve(n + bands);
  double t_lo = 0.0;
  for (int k = 0; k < bands; ++k) {
    const double t_hi = k + 1 == bands ? kPi : t_lo + kPi * widths[k] / total_width;
    const double t_mid = 0.5 * (t_lo + t_hi);
    const int m = std::max(
        3, static_cast<int>(std::lround(2.0 * kPi * std::sin(t_mid) / (t_hi - t_lo))));
    const double cell_area = R * R * (std::cos(t_lo) - std::cos(t_hi)) * 2.0 * kPi / m;
    // midpoints at the band's area centroid in cos(theta)
    const double cz = 0.5 * (std::cos(t_lo) + std::cos(t_hi));
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const double phi0 = 2.0 * kPi * std::fmod(0.7548776662466927 * k, 1.0);
    for (int j = 0; j < m; ++j) {
      const double phi = phi0 + 2.0 * kPi * (j + 0.5) / m;
      const Vec3 nrm{sz * std::cos(phi), sz * std::sin(phi), cz};
      panels.push_back(Panel{{R * nrm[0], R * nrm[1], R * nrm[2]}, nrm, cell_area});
    }
    t_lo = t_hi;
  }
  return BoundaryMesh::from_panels(3, std::move(panels));
}

// Two arms of length |arm| meeting at the origin, bisected by the +x axis.
// The region opening angle is pi - theta, so the arms sit at +-(pi-theta)/2.
BoundaryMesh mesh_wedge(double theta, double arm, int n) {
  const double half = 0.5 * (kPi - theta);
  const double c = std::cos(half), s = std::sin(half);
  const int n1 = n / 2;
  const int n2 = n - n1;
  std::vector<Panel> panels;
  panels.reserve(n);
  const Vec3 normal_up{-s, c, 0.0};
  for (int k = 0; k < n1; ++k) {
    const double t = arm * (k + 0.5) / n1;
    panels.push_back(Panel{{t * c, t * s, 0.0}, normal_up, arm / n1});
  }
  const Vec3 normal_down{-s, -c, 0.0};
  for (int k = 0; k < n2; ++k) {
    const double t = arm * (k + 0.5) / n2;
    panels.push_back(Panel{{t * c, -t * s, 0.0}, normal_down, arm / n2});
  }
  return BoundaryMesh::from_panels(2, std::move(panels));
}

}  // namespace

void validate(const ShapeSpec& shape) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Interval>) {
          if (!(s.a < s.b)) throw domain_error("interval requires a < b");
        } else if constexpr (std::is_same_v<T, Strip>) {
          if (!(s.w > 0.0) || !(s.L > 0.0)) throw domain_error("strip requires w > 0 and L > 0");
        } else if constexpr (std::is_same_v<T, Circle>) {
          if (!(s.R > 0.0)) throw domain_error("circle requires R > 0");
        } else if constexpr (std::is_same_v<T, Sphere>) {
          if (!(s.R > 0.0)) throw domain_error("sphere requires R > 0");
        } else if constexpr (std::is_same_v<T, Wedge>) {
          if (!(s.theta > 0.0 && s.theta < kPi))
            throw domain_error("wedge requires 0 < theta < pi");
          if (!(s.arm_length > 0.0)) throw domain_error("wedge requires arm_length > 0");
        } else {
          validate_polyline(s);
        }
      },
      shape);
}

BoundaryMesh BoundaryMesh::from_panels(int dim, std::vector<Panel> panels) {
  if (dim < 1 || dim > 3) throw domain_error("mesh dim must be 1, 2 or 3");
  if (panels.empty()) throw domain_error("mesh needs at least one panel");
  double total = 0.0;
  for (const auto& p : panels) {
    if (!(p.weight > 0.0)) throw domain_error("panel weight must be positive");
    if (std::abs(norm(p.normal) - 1.0) > 1e-12)
      throw domain_error("panel normal must be a unit vector");
    total += p.weight;
  }
  BoundaryMesh m;
  m.dim = dim;
  m.panels = std::move(panels);
  m.total_measure = total;
  return m;
}

double BoundaryMesh::max_panel_size() const {
  double h = 0.0;
  for (const auto& p : panels)
    h = std::max(h, dim == 3 ? std::sqrt(p.weight) : p.weight);
  return h;
}

BoundaryMesh discretize_boundary(const ShapeSpec& shape, int n_panels, SpatialDim dim) {
  validate(shape);
  if (n_panels < 4) throw domain_error("n_panels must be at least 4");
  if (required_dim(shape) != dim.d)
    throw domain_error("shape/dimension mismatch: shape lives in d=" +
                       std::to_string(required_dim(shape)));
  return std::visit(
      [&](const auto& s) -> BoundaryMesh {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Interval>) {
          // The d=1 boundary is two points with counting measure.
          std::vector<Panel> panels{Panel{{s.a, 0.0, 0.0}, {-1.0, 0.0, 0.0}, 1.0},
                                    Panel{{s.b, 0.0, 0.0}, {1.0, 0.0, 0.0}, 1.0}};
          return BoundaryMesh::from_panels(1, std::move(panels));
        } else if constexpr (std::is_same_v<T, Strip>) {
          const double hw = 0.5 * s.w, hl = 0.5 * s.L;
          return mesh_polyline({{-hw, -hl}, {hw, -hl}, {hw, hl}, {-hw, hl}}, n_panels);
        } else if constexpr (std::is_same_v<T, Circle>) {
          return mesh_circle(s.R, n_panels);
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return mesh_sphere(s.R, n_panels);
        } else if constexpr (std::is_same_v<T, Wedge>) {
          return mesh_wedge(s.theta, s.arm_length, n_panels);
        } else {
          return mesh_polyline(s.vertices, n_panels);
        }
      },
      shape);
}

PairGeometry pair_distance_and_normals(const BoundaryMesh& mesh_a, std::size_t i,
                                       const BoundaryMesh& mesh_b, std::size_t j) {
  if (i >= mesh_a.panels.size() || j >= mesh_b.panels.size())
    throw domain_error("panel index out of range");
  const Panel& p = mesh_a.panels[i];
  const Panel& q = mesh_b.panels[j];
  const Vec3 d{q.midpoint[0] - p.midpoint[0], q.midpoint[1] - p.midpoint[1],
               q.midpoint[2] - p.midpoint[2]};
  const double sep = norm(d);
  if (!(sep > 0.0))
    throw domain_error("coincident panel midpoints (zero separation)");
  return PairGeometry{sep, dot(p.normal, q.normal)};
}

ShapeSpec mirror(const ShapeSpec& shape) {
  return std::visit(
      [](const auto& s) -> ShapeSpec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polyline>) {
          Polyline out = s;
          for (auto& v : out.vertices) v[1] = -v[1];
          return out;
        } else {
          return s;  // the analytic shapes are symmetric about the mirror plane
        }
      },
      shape);
}

BoundaryMesh translated(const BoundaryMesh& mesh, const Vec3& offset) {
  BoundaryMesh out = mesh;
  for (auto& p : out.panels)
    for (int k = 0; k < 3; ++k) p.midpoint[k] += offset[k];
  return out;
}

}  // namespace entroscope::geom
