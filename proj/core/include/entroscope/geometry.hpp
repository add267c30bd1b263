#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "entroscope/errors.hpp"

namespace entroscope::geom {

// Spatial dimension of the theory. Engines reject unsupported values
// explicitly rather than extrapolating.
struct SpatialDim {
  int d;
  explicit SpatialDim(int dim) : d(dim) {
    if (d < 1 || d > 3) throw domain_error("d must be 1, 2 or 3");
  }
};

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Region shapes. All lengths are dimensionless; the caller fixes the unit.
struct Interval {
  double a, b;  // d=1, boundary is the two endpoints
};
struct Strip {
  double w, L;  // d=2, rectangle w x L centered at the origin
};
struct Circle {
  double R;  // d=2
};
struct Sphere {
  double R;  // d=3
};
struct Wedge {
  double theta;       // deficit parameter, opening angle is pi - theta
  double arm_length;  // each of the two arms
};
struct Polyline {
  std::vector<std::array<double, 2>> vertices;  // closed, implicit last->first edge
};

using ShapeSpec = std::variant<Interval, Strip, Circle, Sphere, Wedge, Polyline>;

// Throws domain_error on an invalid shape (ordering, signs, self-intersection).
void validate(const ShapeSpec& shape);

struct Panel {
  Vec3 midpoint;
  Vec3 normal;    // unit, outward
  double weight;  // arclength in d=2, area in d=3, counting measure in d=1
};

struct BoundaryMesh {
  int dim = 2;
  std::vector<Panel> panels;
  double total_measure = 0.0;

  // Validates unit normals, positive weights and the weight sum, then
  // assembles the mesh. This is the only constructor path.
  static BoundaryMesh from_panels(int dim, std::vector<Panel> panels);

  // Largest panel extent: weight in d=2 (arclength), sqrt(weight) in d=3.
  double max_panel_size() const;
};

// Midpoint-rule discretization with normals taken from the parametrization.
// Panel weights sum to the analytic boundary measure.
BoundaryMesh discretize_boundary(const ShapeSpec& shape, int n_panels, SpatialDim dim);

struct PairGeometry {
  double separation;  // Euclidean midpoint distance
  double normal_dot;  // n_i . n_j
};

// Distance and normal alignment of one panel pair. Coincident midpoints are
// an error; the caller is expected to regulate short distances itself.
PairGeometry pair_distance_and_normals(const BoundaryMesh& mesh_a, std::size_t i,
                                       const BoundaryMesh& mesh_b, std::size_t j);

// Mirror image across the x-axis (d=2 shapes) or the xy-plane (sphere).
ShapeSpec mirror(const ShapeSpec& shape);

// Rigidly shifted copy of a mesh.
BoundaryMesh translated(const BoundaryMesh& mesh, const Vec3& offset);

}  // namespace entroscope::geom
