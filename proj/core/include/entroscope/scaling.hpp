#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "entroscope/errors.hpp"
#include "entroscope/geometry.hpp"

namespace entroscope::scaling {

// An I(x) or S(eps) curve: strictly increasing control parameter, value in
// nats, free-form metadata carried through to the output files.
struct EntropySeries {
  std::vector<std::pair<double, double>> points;
  std::string param_name;
  std::map<std::string, std::string> meta;

  EntropySeries() = default;
  EntropySeries(std::vector<std::pair<double, double>> pts, std::string name,
                std::map<std::string, std::string> meta = {});
};

// Classification of small-parameter behavior.
struct DivergenceFit {
  enum class Kind { power, log, none };
  Kind kind = Kind::none;
  double exponent = 0.0;  // power only, > 0
  double coefficient = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  std::string note;  // e.g. "universal-prefactor-unfixed"
};

const char* to_string(DivergenceFit::Kind kind);

// Collision scenario between two regions: flat facing surfaces of size V,
// smooth point contact with curvature radius R, or a corner of slope m.
struct CollisionGeometry {
  enum class Kind { flat, parabolic, corner };
  Kind kind;
  double parameter;  // V, R, or m
  geom::SpatialDim dim;

  static CollisionGeometry flat(double V, geom::SpatialDim dim);
  static CollisionGeometry parabolic(double R, geom::SpatialDim dim);
  static CollisionGeometry corner(double m, geom::SpatialDim dim);
};

// Entanglement accumulated between scales r_uv and r_ir for a region of
// size L: closed forms ln(r_ir/r_uv) in d=1 and
// (L^{d-1}/(d-1)) (r_uv^{1-d} - r_ir^{1-d}) above.
double scale_integral_entropy(double L, double r_uv, double r_ir, geom::SpatialDim dim);

// The asserted small-x form for each collision scenario: flat -> power
// d-1 (log in d=1), parabolic -> power (d-1)/2 (log in d=1), corner -> log.
// Coefficients are left symbolic (1, with an explanatory note).
DivergenceFit predicted_collision_exponent(const CollisionGeometry& geometry);

// Int_0^{rho_c} rho^{d-2} / (x + rho^2/R)^{d-1} drho, to relative 1e-10.
double parabolic_collision_integral(double R, double x, double rho_c,
                                    geom::SpatialDim dim);

struct FermiLiquidResult {
  double value;
  bool outside_scaling_window;  // k_F x < 3
  bool nonpositive;             // x >= x_ref
};

// coeff * k_F^{d-1} * V * ln(x_ref/x). The additive constant is not
// universal, so the caller supplies the reference scale.
FermiLiquidResult fermi_liquid_mi(double k_F, double V, double x, double x_ref,
                                  geom::SpatialDim dim, double coeff = 1.0);

struct PowerModelFit {
  double exponent;
  double coefficient;
  double offset;
  double residual_rms;
  bool valid;  // false when no admissible offset left all values positive
  std::string note;
};

struct LogModelFit {
  double coefficient;
  double offset;
  double residual_rms;
};

// value ~ coefficient * param^{-exponent} + offset. The offset is seeded
// from the median of the largest-param quartile when that keeps every value
// positive, then refined from the fit residual medians; candidates are only
// accepted when they lower the residual.
PowerModelFit fit_power_model(const EntropySeries& series);

// value ~ coefficient * ln(1/param) + offset, plain least squares.
LogModelFit fit_log_model(const EntropySeries& series);

// Fits both models and keeps the one with the lower residual;
// kind = none when even that residual exceeds 10% of the value range.
// Needs >= 6 points spanning at least one decade.
DivergenceFit fit_divergence(const EntropySeries& series);

}  // namespace entroscope::scaling
