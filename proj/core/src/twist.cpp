#include "entroscope/twist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "entroscope/linfit.hpp"
#include "entroscope/quadrature.hpp"
#include "entroscope/summation.hpp"

namespace entroscope::twist {

namespace {

constexpr double kPi = std::numbers::pi;

using geom::BoundaryMesh;
using geom::Panel;
using geom::Vec3;

double pow_2dm2(double separation, int d) {
  const double s2 = separation * separation;
  return d == 2 ? s2 : s2 * s2;
}

void check_mesh_dim(const BoundaryMesh& mesh, const TwistKernelConfig& cfg) {
  if (mesh.dim != cfg.dim.d)
    throw domain_error("mesh dimension does not match kernel dim");
}

double bounding_box_diameter(const BoundaryMesh& mesh) {
  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const auto& p : mesh.panels)
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], p.midpoint[k]);
      hi[k] = std::max(hi[k], p.midpoint[k]);
    }
  return std::hypot(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]);
}

double min_pair_separation(const BoundaryMesh& a, const BoundaryMesh& b) {
  double best = 1e300;
  for (const auto& p : a.panels)
    for (const auto& q : b.panels) {
      const double d = std::hypot(q.midpoint[0] - p.midpoint[0],
                                  q.midpoint[1] - p.midpoint[1],
                                  q.midpoint[2] - p.midpoint[2]);
      best = std::min(best, d);
    }
  return best;
}

// Angular numerator of the reduced circle/sphere integrand: n1.n2 = cos(t),
// and the transverse option contributes (n1.xhat)(n2.xhat) = -sin^2(t/2).
double angular_numerator(double theta, const TwistKernelConfig& cfg) {
  double f = std::cos(theta);
  if (cfg.include_transverse_term) {
    const double s = std::sin(0.5 * theta);
    f -= s * s;
  }
  return f;
}

std::vector<double> geometric_breakpoints(double lo, double hi) {
  std::vector<double> cuts{lo};
  for (double c = 10.0 * lo; c < hi; c *= 10.0) cuts.push_back(c);
  cuts.push_back(hi);
  return cuts;
}

// ---- wedge internals -------------------------------------------------------

// arctan(a) - arctan(b) evaluated as atan2(a-b, 1+ab) with the difference
// formed symbolically; stable when both arguments blow up together.
double atan_width(double span, double q, double left, double right, double m) {
  // span = right - left, arguments are (right-m)/q and (left-m)/q
  return std::atan2(span / q, 1.0 + (right - m) * (left - m) / (q * q));
}

// Inner s-integral of 1/((s-m)^2 + q^2) over [0, arm] minus the chordal
// exclusion |dist| < eps, where q = t sin(gamma) and m = t cos(gamma).
double wedge_cross_inner(double t, double arm, double eps, double cos_g, double sin_g) {
  const double q = t * sin_g;
  const double m = t * cos_g;
  if (q >= eps) {
    return atan_width(arm, q, 0.0, arm, m) / q;
  }
  if (q <= 0.0) {
    // t = 0 (apex): the distance is plain s, excluded below eps.
    const double s0 = std::min(eps, arm);
    return s0 < arm ? 1.0 / s0 - 1.0 / arm : 0.0;
  }
  const double h = std::sqrt(std::max(0.0, eps * eps - q * q));
  const double s_lo = std::clamp(m - h, 0.0, arm);
  const double s_hi = std::clamp(m + h, 0.0, arm);
  double acc = 0.0;
  if (arm > s_hi) acc += atan_width(arm - s_hi, q, s_hi, arm, m);
  if (s_lo > 0.0) acc += atan_width(s_lo, q, 0.0, s_lo, m);
  return acc / q;
}

// Cross-arm double integral D(eps) for a wedge of opening angle gamma.
double wedge_cross_integral(double arm, double eps, double cos_g, double sin_g) {
  auto inner = [&](double t) {
    return wedge_cross_inner(t, arm, eps, cos_g, sin_g);
  };
  const double t_switch = std::min(eps / sin_g, arm);
  std::vector<double> cuts{0.0, t_switch};
  for (double c = 10.0 * t_switch; c < arm; c *= 10.0) cuts.push_back(c);
  cuts.push_back(arm);
  std::sort(cuts.begin(), cuts.end());
  return quad::integrate_segments(inner, cuts, 1e-11);
}

// Straight-boundary reference: ordered double integral of 1/(s-t)^2 over a
// segment of length len with |s-t| >= eps.
double segment_self_integral(double len, double eps) {
  return 2.0 * ((len - eps) / eps - std::log(len / eps));
}

// Log-coefficient extraction from a cutoff ladder: fit
// a/eps + b ln(1/eps) + c + d eps, optionally dropping the two smallest
// cutoffs when that halves the residual.
double ladder_log_coefficient(const std::vector<double>& eps,
                              const std::vector<double>& value) {
  auto fit_over = [&](std::size_t n) {
    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    // The ladder is ordered largest cutoff first; take the first n entries.
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back({1.0 / eps[i], std::log(1.0 / eps[i]), 1.0, eps[i]});
      y.push_back(value[i]);
    }
    return detail::lsq_fit(rows, y);
  };
  const auto full = fit_over(eps.size());
  const auto trimmed = fit_over(eps.size() - 2);
  const bool use_trimmed = trimmed.residual_rms < 0.5 * full.residual_rms;
  return (use_trimmed ? trimmed : full).coeff[1];
}

double wedge_ladder_coefficient(double theta, double arm, const TwistKernelConfig& cfg) {
  std::vector<double> eps(12), value(12);
  for (int j = 0; j < 12; ++j) {
    eps[j] = arm * 1e-3 / std::pow(2.0, j);
    value[j] = wedge_self_integral(theta, arm, eps[j], cfg);
  }
  return ladder_log_coefficient(eps, value);
}

double flat_ladder_coefficient(double arm, const TwistKernelConfig& cfg) {
  std::vector<double> eps(12), value(12);
  for (int j = 0; j < 12; ++j) {
    eps[j] = arm * 1e-3 / std::pow(2.0, j);
    // Degenerate theta -> 0 wedge: one straight boundary of length 2*arm.
    value[j] = cfg.norm_alpha * segment_self_integral(2.0 * arm, eps[j]);
  }
  return ladder_log_coefficient(eps, value);
}

}  // namespace

double kernel(double separation, double normal_dot, const TwistKernelConfig& cfg) {
  if (!(separation > 0.0)) throw domain_error("separation must be positive");
  return normal_dot / pow_2dm2(separation, cfg.dim.d);
}

double kernel_pair(const BoundaryMesh& a, std::size_t i, const BoundaryMesh& b,
                   std::size_t j, const TwistKernelConfig& cfg) {
  const Panel& p = a.panels[i];
  const Panel& q = b.panels[j];
  const Vec3 d{q.midpoint[0] - p.midpoint[0], q.midpoint[1] - p.midpoint[1],
               q.midpoint[2] - p.midpoint[2]};
  const double sep = geom::norm(d);
  if (!(sep > 0.0)) throw domain_error("coincident panel midpoints (zero separation)");
  double num = geom::dot(p.normal, q.normal);
  if (cfg.include_transverse_term) {
    num += (geom::dot(p.normal, d) / sep) * (geom::dot(q.normal, d) / sep);
  }
  return num / pow_2dm2(sep, cfg.dim.d);
}

double self_entropy_integral(const BoundaryMesh& mesh, double epsilon,
                             const TwistKernelConfig& cfg) {
  check_mesh_dim(mesh, cfg);
  if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
  const double diam = bounding_box_diameter(mesh);
  if (!(epsilon < diam / 10.0))
    throw domain_error("epsilon must be below mesh diameter/10");
  const double h = mesh.max_panel_size();
  if (h > epsilon / 4.0) {
    const double cell = epsilon / 4.0;
    const long required =
        mesh.dim == 3
            ? static_cast<long>(std::ceil(mesh.total_measure / (cell * cell)))
            : static_cast<long>(std::ceil(mesh.total_measure / cell));
    throw resolution_error(
        "mesh under-resolved for epsilon: panel size " + std::to_string(h) +
            " exceeds epsilon/4; need about " + std::to_string(required) + " panels",
        required);
  }

  const std::size_t n = mesh.panels.size();
  const std::size_t chunk = 64;
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  const int d = cfg.dim.d;
  const bool transverse = cfg.include_transverse_term;
  const double sum = detail::chunked_sum(n_chunks, [&](std::size_t ci) {
    const std::size_t i0 = ci * chunk;
    const std::size_t i1 = std::min(n, i0 + chunk);
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const Panel& p = mesh.panels[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const Panel& q = mesh.panels[j];
        const double dx = q.midpoint[0] - p.midpoint[0];
        const double dy = q.midpoint[1] - p.midpoint[1];
        const double dz = q.midpoint[2] - p.midpoint[2];
        const double s2 = dx * dx + dy * dy + dz * dz;
        if (s2 < epsilon * epsilon) continue;
        double num = p.normal[0] * q.normal[0] + p.normal[1] * q.normal[1] +
                     p.normal[2] * q.normal[2];
        if (transverse) {
          const double pn = p.normal[0] * dx + p.normal[1] * dy + p.normal[2] * dz;
          const double qn = q.normal[0] * dx + q.normal[1] * dy + q.normal[2] * dz;
          num += pn * qn / s2;
        }
        acc += p.weight * q.weight * num / (d == 2 ? s2 : s2 * s2);
      }
    }
    return acc;
  });
  // Unordered pairs counted once above; the double integral is ordered.
  return cfg.norm_alpha * 2.0 * sum;
}

double circle_entropy_reduced(double R, double epsilon, const TwistKernelConfig& cfg) {
  if (cfg.dim.d != 2) throw domain_error("circle_entropy_reduced requires d = 2");
  if (!(R > 0.0)) throw domain_error("R must be positive");
  if (!(epsilon > 0.0 && epsilon < R / 10.0))
    throw domain_error("epsilon must lie in (0, R/10)");
  const double delta = epsilon / R;
  auto f = [&](double th) {
    const double s = std::sin(0.5 * th);
    return kPi * angular_numerator(th, cfg) / (s * s);
  };
  return cfg.norm_alpha *
         quad::integrate_segments(f, geometric_breakpoints(delta, kPi), 1e-10);
}

double sphere_entropy_reduced(double R, double epsilon, const TwistKernelConfig& cfg) {
  if (cfg.dim.d != 3) throw domain_error("sphere_entropy_reduced requires d = 3");
  if (!(R > 0.0)) throw domain_error("R must be positive");
  if (!(epsilon > 0.0 && epsilon < R / 10.0))
    throw domain_error("epsilon must lie in (0, R/10)");
  const double delta = epsilon / R;
  auto f = [&](double th) {
    const double s = std::sin(0.5 * th);
    const double s2 = s * s;
    return 0.5 * kPi * kPi * std::sin(th) * angular_numerator(th, cfg) / (s2 * s2);
  };
  return cfg.norm_alpha *
         quad::integrate_segments(f, geometric_breakpoints(delta, kPi), 1e-10);
}

EntropyFitResult fit_circle_entropy_scaling(const TwistKernelConfig& cfg, double t_min,
                                            double t_max, int n_points) {
  if (cfg.dim.d != 2) throw domain_error("circle fit requires d = 2");
  if (!(t_min > 0.0 && t_min < t_max)) throw domain_error("bad fit window");
  if (n_points < 5) throw domain_error("fit needs at least 5 points");
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (int i = 0; i < n_points; ++i) {
    const double t =
        t_min * std::pow(t_max / t_min, double(i) / double(n_points - 1));
    rows.push_back({1.0 / t, std::log(1.0 / t), 1.0, t});
    y.push_back(circle_entropy_reduced(1.0, t, cfg));
  }
  const auto fit = detail::lsq_fit(rows, y);
  return EntropyFitResult{fit.coeff[0], fit.coeff[1], fit.coeff[2], fit.residual_rms};
}

EntropyFitResult fit_sphere_entropy_scaling(const TwistKernelConfig& cfg, double t_min,
                                            double t_max, int n_points) {
  if (cfg.dim.d != 3) throw domain_error("sphere fit requires d = 3");
  if (!(t_min > 0.0 && t_min < t_max)) throw domain_error("bad fit window");
  if (n_points < 4) throw domain_error("fit needs at least 4 points");
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (int i = 0; i < n_points; ++i) {
    const double t =
        t_min * std::pow(t_max / t_min, double(i) / double(n_points - 1));
    rows.push_back({1.0 / (t * t), std::log(1.0 / t), 1.0});
    y.push_back(sphere_entropy_reduced(1.0, t, cfg));
  }
  const auto fit = detail::lsq_fit(rows, y);
  return EntropyFitResult{fit.coeff[0], fit.coeff[1], fit.coeff[2], fit.residual_rms};
}

double wedge_self_integral(double theta, double arm_length, double epsilon,
                           const TwistKernelConfig& cfg) {
  if (cfg.dim.d != 2) throw domain_error("wedge integral requires d = 2");
  if (!(theta > 0.0 && theta < kPi)) throw domain_error("theta must lie in (0, pi)");
  if (!(arm_length > 0.0)) throw domain_error("arm_length must be positive");
  if (!(epsilon > 0.0 && epsilon < arm_length / 10.0))
    throw domain_error("epsilon must lie in (0, arm_length/10)");
  // Opening angle gamma = pi - theta; arm normals satisfy n1.n2 = cos(theta).
  const double gamma = kPi - theta;
  const double same_arm = 2.0 * segment_self_integral(arm_length, epsilon);
  const double cross = 2.0 * std::cos(theta) *
                       wedge_cross_integral(arm_length, epsilon, std::cos(gamma),
                                            std::sin(gamma));
  return cfg.norm_alpha * (same_arm + cross);
}

double wedge_log_coefficient(double theta, double arm_length,
                             const TwistKernelConfig& cfg) {
  if (!(theta > 0.0 && theta < kPi)) throw domain_error("theta must lie in (0, pi)");
  if (!(arm_length > 0.0)) throw domain_error("arm_length must be positive");
  const double b_wedge = wedge_ladder_coefficient(theta, arm_length, cfg);
  const double b_flat = flat_ladder_coefficient(arm_length, cfg);
  const double b_ref = wedge_ladder_coefficient(0.5 * kPi, arm_length, cfg);
  return (b_wedge - b_flat) / (b_ref - b_flat);
}

double cross_mutual_information(const BoundaryMesh& mesh_a, const BoundaryMesh& mesh_b,
                                const TwistKernelConfig& cfg) {
  check_mesh_dim(mesh_a, cfg);
  check_mesh_dim(mesh_b, cfg);
  const double min_sep = min_pair_separation(mesh_a, mesh_b);
  if (!(min_sep > 0.0)) throw domain_error("meshes touch (zero separation)");
  const double h = std::max(mesh_a.max_panel_size(), mesh_b.max_panel_size());
  if (min_sep < h)
    throw proximity_error(
        "meshes closer than the panel scale; refine the meshes or use an "
        "analytic path");

  const std::size_t n = mesh_a.panels.size();
  const std::size_t m = mesh_b.panels.size();
  const std::size_t chunk = 64;
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  const int d = cfg.dim.d;
  const bool transverse = cfg.include_transverse_term;
  const double sum = detail::chunked_sum(n_chunks, [&](std::size_t ci) {
    const std::size_t i0 = ci * chunk;
    const std::size_t i1 = std::min(n, i0 + chunk);
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const Panel& p = mesh_a.panels[i];
      for (std::size_t j = 0; j < m; ++j) {
        const Panel& q = mesh_b.panels[j];
        const double dx = q.midpoint[0] - p.midpoint[0];
        const double dy = q.midpoint[1] - p.midpoint[1];
        const double dz = q.midpoint[2] - p.midpoint[2];
        const double s2 = dx * dx + dy * dy + dz * dz;
        double num = p.normal[0] * q.normal[0] + p.normal[1] * q.normal[1] +
                     p.normal[2] * q.normal[2];
        if (transverse) {
          const double pn = p.normal[0] * dx + p.normal[1] * dy + p.normal[2] * dz;
          const double qn = q.normal[0] * dx + q.normal[1] * dy + q.normal[2] * dz;
          num += pn * qn / s2;
        }
        acc += p.weight * q.weight * num / (d == 2 ? s2 : s2 * s2);
      }
    }
    return acc;
  });
  // Facing boundary edges have anti-parallel outward normals, so the raw
  // pair sum is negative there; the mutual information flips it.
  return -cfg.norm_alpha * sum;
}

std::pair<BoundaryMesh, BoundaryMesh> facing_segments(double L, double x,
                                                      int panels_per_side) {
  if (!(L > 0.0)) throw domain_error("L must be positive");
  if (!(x > 0.0)) throw domain_error("x must be positive");
  if (panels_per_side < 1) throw domain_error("panels_per_side must be >= 1");
  const double w = L / panels_per_side;
  std::vector<Panel> a, b;
  a.reserve(panels_per_side);
  b.reserve(panels_per_side);
  for (int k = 0; k < panels_per_side; ++k) {
    const double y = -0.5 * L + (k + 0.5) * w;
    a.push_back(Panel{{0.0, y, 0.0}, {1.0, 0.0, 0.0}, w});
    b.push_back(Panel{{x, y, 0.0}, {-1.0, 0.0, 0.0}, w});
  }
  return {BoundaryMesh::from_panels(2, std::move(a)),
          BoundaryMesh::from_panels(2, std::move(b))};
}

}  // namespace entroscope::twist
