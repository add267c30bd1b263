#include "entroscope/holographic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entroscope/quadrature.hpp"

namespace entroscope::holo {

namespace {

constexpr double kPi = std::numbers::pi;

// Integrals over u = r/r* hit an integrable 1/sqrt(1-u) endpoint at u = 1;
// the substitution u = 1 - v^2 removes it analytically.

// Int_0^1 u^2 / sqrt(1-u^4) du
double turning_point_integral() {
  auto f = [](double v) {
    const double u = 1.0 - v * v;
    return 2.0 * u * u / std::sqrt((1.0 + u) * (1.0 + u * u));
  };
  return quad::integrate(f, 0.0, 1.0, 1e-13);
}

// a(delta) = 2 Int_delta^1 du / (u^2 sqrt(1-u^4)), the on-shell area in
// units of r* (per unit strip length, per L_Lambda^2).
double onshell_area(double delta) {
  auto direct = [](double u) { return 1.0 / (u * u * std::sqrt(1.0 - u * u * u * u)); };
  auto tail = [](double v) {
    const double u = 1.0 - v * v;
    return 2.0 / (u * u * std::sqrt((1.0 + u) * (1.0 + u * u)));
  };
  const double head = quad::integrate(direct, delta, 0.5, 1e-13);
  const double rest = quad::integrate(tail, 0.0, std::sqrt(0.5), 1e-13);
  return 2.0 * (head + rest);
}

StripConstants compute_constants() {
  StripConstants sc{};
  sc.turning_point_factor = turning_point_integral();
  const double g34 = std::tgamma(0.75), g14 = std::tgamma(0.25);
  sc.turning_point_closed = std::sqrt(kPi) * g34 / g14;
  sc.k2_closed_form = 4.0 * kPi * (g34 / g14) * (g34 / g14);

  // Extract k1 and k2 from a(delta) = k1/delta - k2/(2K) + O(delta^3) at two
  // small regulator values.
  const double d1 = 1e-3, d2 = 5e-4;
  const double a1 = onshell_area(d1), a2 = onshell_area(d2);
  sc.k1_quadrature = (a1 - a2) / (1.0 / d1 - 1.0 / d2);
  sc.k2_quadrature =
      2.0 * sc.turning_point_factor * (sc.k1_quadrature / d1 - a1);
  return sc;
}

// Local two-strip mutual-information density per unit length.
double mi_density(double x, double w0) {
  if (std::isinf(w0)) return 1.0 / x;
  return 1.0 / x + 1.0 / (2.0 * w0 + x) - 2.0 / w0;
}

}  // namespace

StripConfig::StripConfig(double w, double L, double x, double epsilon, double prefactor)
    : w(w), L(L), x(x), epsilon(epsilon), prefactor(prefactor) {
  if (!(w > 0.0)) throw domain_error("w must be positive");
  if (!(L > 0.0)) throw domain_error("L must be positive");
  if (!(x > 0.0)) throw domain_error("x must be positive");
  if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
  if (!(prefactor > 0.0)) throw domain_error("prefactor must be positive");
  if (!(epsilon < w / 10.0))
    throw domain_error("epsilon must be below w/10 for the strip regime");
}

AdiabaticProfile AdiabaticProfile::parabolic(double x0, double R, double w0,
                                             double y_min, double y_max) {
  if (!(x0 > 0.0)) throw domain_error("x0 must be positive");
  if (!(R > 0.0)) throw domain_error("R must be positive");
  if (!(w0 > 0.0)) throw domain_error("w0 must be positive");
  if (!(y_min < y_max)) throw domain_error("y_min must be below y_max");
  return AdiabaticProfile{Kind::parabolic, x0, R, w0, y_min, y_max};
}

AdiabaticProfile AdiabaticProfile::corner(double x0, double m, double w0,
                                          double y_min, double y_max) {
  if (!(x0 > 0.0)) throw domain_error("x0 must be positive");
  if (!(m > 0.0)) throw domain_error("m must be positive");
  if (!(w0 > 0.0)) throw domain_error("w0 must be positive");
  if (!(y_min < y_max)) throw domain_error("y_min must be below y_max");
  return AdiabaticProfile{Kind::corner, x0, m, w0, y_min, y_max};
}

const StripConstants& strip_constants() {
  static const StripConstants sc = compute_constants();
  return sc;
}

double strip_turning_point(double w) {
  if (!(w > 0.0)) throw domain_error("w must be positive");
  return w / (2.0 * strip_constants().turning_point_factor);
}

double strip_entropy(double w, double L, double epsilon, double prefactor) {
  if (!(w > 0.0)) throw domain_error("w must be positive");
  if (!(L > 0.0)) throw domain_error("L must be positive");
  if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
  if (!(epsilon < w / 10.0))
    throw domain_error("epsilon must be below w/10 for the strip regime");
  const StripConstants& sc = strip_constants();
  return prefactor * (sc.k1_quadrature * L / epsilon - sc.k2_quadrature * L / w);
}

double two_strip_mutual_information(const StripConfig& cfg) {
  const double candidate =
      cfg.prefactor * strip_constants().k2_quadrature * cfg.L *
      (1.0 / cfg.x + 1.0 / (2.0 * cfg.w + cfg.x) - 2.0 / cfg.w);
  return std::max(0.0, candidate);
}

double critical_separation_ratio() { return 0.5 * (std::sqrt(5.0) - 1.0); }

AdiabaticResult adiabatic_mutual_information(const AdiabaticProfile& profile,
                                             double prefactor) {
  const double w0 = profile.w0;
  const double x0 = profile.x0;

  // Clip to the sub-range where the candidate connected surface wins.
  double lo = profile.y_min, hi = profile.y_max;
  if (!std::isinf(w0)) {
    const double x_star = critical_separation_ratio() * w0;
    if (x0 >= x_star) return AdiabaticResult{0.0, 0.0, false};
    const double reach = x_star - x0;
    const double y_c = profile.kind == AdiabaticProfile::Kind::parabolic
                           ? std::sqrt(profile.shape * reach)
                           : reach / profile.shape;
    lo = std::max(lo, -y_c);
    hi = std::min(hi, y_c);
  }
  if (!(lo < hi)) return AdiabaticResult{0.0, 0.0, false};

  const bool parabolic = profile.kind == AdiabaticProfile::Kind::parabolic;
  auto x_of_y = [&](double y) {
    return parabolic ? x0 + y * y / profile.shape : x0 + profile.shape * std::abs(y);
  };
  auto integrand = [&](double y) { return mi_density(x_of_y(y), w0); };

  // Breakpoints at the kink and where the density turns over.
  const double width = parabolic ? std::sqrt(profile.shape * x0) : x0 / profile.shape;
  std::vector<double> cuts{lo, hi};
  for (double c : {-10.0 * width, -width, 0.0, width, 10.0 * width})
    if (c > lo && c < hi) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());

  double mi = quad::integrate_segments(integrand, cuts, 1e-9);
  mi *= prefactor * strip_constants().k2_quadrature;

  const double y_extent = std::max(std::abs(lo), std::abs(hi));
  const double max_slope =
      parabolic ? 2.0 * y_extent / profile.shape : profile.shape;
  return AdiabaticResult{std::max(0.0, mi), max_slope, max_slope > 0.3};
}

}  // namespace entroscope::holo
