#pragma once

#include <utility>

#include "entroscope/errors.hpp"
#include "entroscope/geometry.hpp"

namespace entroscope::twist {

// Gaussian twist-operator engine configuration. norm_alpha carries the
// theory-dependent replica normalization d/dn(alpha_n^2)|_{n=1}/2; every
// output is linear in it and reported "up to" that constant.
struct TwistKernelConfig {
  geom::SpatialDim dim{2};
  bool include_transverse_term = false;
  double norm_alpha = 1.0;

  TwistKernelConfig(geom::SpatialDim d, bool transverse = false, double alpha = 1.0)
      : dim(d), include_transverse_term(transverse), norm_alpha(alpha) {
    if (dim.d < 2) throw domain_error("twist kernel requires d >= 2");
    if (!(norm_alpha > 0.0)) throw domain_error("norm_alpha must be positive");
  }
};

// Result of fitting a cutoff sweep against
// a (R/eps)^{d-1} + b ln(R/eps) + c.
struct EntropyFitResult {
  double coeff_power = 0.0;
  double coeff_log = 0.0;
  double coeff_const = 0.0;
  double residual_rms = 0.0;
};

// The delta-term two-point kernel n1.n2 / separation^{2(d-1)}. The optional
// transverse piece needs the inter-panel direction and is applied by the
// pair evaluator below.
double kernel(double separation, double normal_dot, const TwistKernelConfig& cfg);

// Full kernel for one panel pair, including the transverse term when the
// config enables it.
double kernel_pair(const geom::BoundaryMesh& a, std::size_t i,
                   const geom::BoundaryMesh& b, std::size_t j,
                   const TwistKernelConfig& cfg);

// Cutoff-regulated boundary self-integral
// norm_alpha * sum_{i!=j, sep>=eps} w_i w_j K_ij.
// Panels must resolve the cutoff (size <= eps/4).
double self_entropy_integral(const geom::BoundaryMesh& mesh, double epsilon,
                             const TwistKernelConfig& cfg);

// Reduced one-dimensional forms of the circle (d=2) and sphere (d=3)
// self-integrals, by rotational symmetry. Angular lower limit eps/R.
double circle_entropy_reduced(double R, double epsilon, const TwistKernelConfig& cfg);
double sphere_entropy_reduced(double R, double epsilon, const TwistKernelConfig& cfg);

// Sweeps eps/R over a log grid inside [t_min, t_max] and fits the
// divergence structure. The circle fit carries an extra eps/R nuisance
// basis term so the O(eps) remainder cannot leak into the log coefficient.
EntropyFitResult fit_circle_entropy_scaling(const TwistKernelConfig& cfg,
                                            double t_min = 1e-4, double t_max = 1e-2,
                                            int n_points = 16);
EntropyFitResult fit_sphere_entropy_scaling(const TwistKernelConfig& cfg,
                                            double t_min = 1e-4, double t_max = 1e-2,
                                            int n_points = 16);

// Wedge self-integral (delta term only), semi-analytic: same-arm pieces in
// closed form, the cross-arm double integral by one-dimensional adaptive
// quadrature with the chordal cutoff.
double wedge_self_integral(double theta, double arm_length, double epsilon,
                           const TwistKernelConfig& cfg);

// Coefficient of ln(1/eps) extracted from a 12-step geometric cutoff
// ladder, with the free-endpoint contribution removed via a flat reference
// and normalized so theta = pi/2 maps to 1.
double wedge_log_coefficient(double theta, double arm_length,
                             const TwistKernelConfig& cfg);

// Cross-boundary mutual information: no cutoff; sign convention fixed so
// two facing flat edges give a positive value.
double cross_mutual_information(const geom::BoundaryMesh& mesh_a,
                                const geom::BoundaryMesh& mesh_b,
                                const TwistKernelConfig& cfg);

// Two facing straight edges of length L at separation x (d=2), outward
// normals toward each other: the standard collision geometry.
std::pair<geom::BoundaryMesh, geom::BoundaryMesh> facing_segments(double L, double x,
                                                                  int panels_per_side);

}  // namespace entroscope::twist
