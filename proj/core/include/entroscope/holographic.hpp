#pragma once

#include "entroscope/errors.hpp"

namespace entroscope::holo {

// Two parallel strips on the d=2 boundary of AdS4: width w, length L >> w,
// separation x, bulk UV cutoff epsilon. `prefactor` stands for the overall
// L_Lambda^2/(4 G_N); every output is reported in that unit.
struct StripConfig {
  double w, L, x, epsilon;
  double prefactor = 1.0;
  StripConfig(double w, double L, double x, double epsilon, double prefactor = 1.0);
};

// Slightly curved strip pair closing at y = 0: separation x(y) = x0 + y^2/R
// (parabolic) or x0 + m|y| (corner), constant width w0 (may be infinite).
struct AdiabaticProfile {
  enum class Kind { parabolic, corner };
  Kind kind;
  double x0;
  double shape;  // radius of curvature R, or corner slope m
  double w0;     // +infinity selects the isolated-edge limit
  double y_min, y_max;

  static AdiabaticProfile parabolic(double x0, double R, double w0, double y_min,
                                    double y_max);
  static AdiabaticProfile corner(double x0, double m, double w0, double y_min,
                                 double y_max);
};

struct AdiabaticResult {
  double mi;
  double max_slope;        // max |dx/dy| over the integrated sub-range
  bool adiabatic_warning;  // max_slope > 0.3
};

// Strip constants computed once: k1 and k2 extracted from the regulated
// on-shell area quadrature, alongside their Gamma-function closed forms.
struct StripConstants {
  double k1_quadrature;
  double k2_quadrature;
  double k2_closed_form;        // 4 pi (Gamma(3/4)/Gamma(1/4))^2
  double turning_point_factor;  // K = sqrt(pi) Gamma(3/4)/Gamma(1/4), quadrature
  double turning_point_closed;  // same, closed form
};
const StripConstants& strip_constants();

// r* solving w/2 = r* Int_0^1 u^2/sqrt(1-u^4) du, evaluated by quadrature.
double strip_turning_point(double w);

// prefactor * (k1 L/epsilon - k2 L/w) from the minimal-surface area.
double strip_entropy(double w, double L, double epsilon, double prefactor = 1.0);

// max(0, prefactor * k2 * L * (1/x + 1/(2w+x) - 2/w)); the disconnected
// surface dominates exactly when the candidate is nonpositive.
double two_strip_mutual_information(const StripConfig& cfg);

// x*/w where the mutual information first vanishes: the root of
// 1/t + 1/(2+t) = 2, i.e. (sqrt(5)-1)/2.
double critical_separation_ratio();

// Integrates the local two-strip density over the sub-range where it is
// positive, to relative 1e-8.
AdiabaticResult adiabatic_mutual_information(const AdiabaticProfile& profile,
                                             double prefactor = 1.0);

}  // namespace entroscope::holo
