#include "entroscope/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entroscope/quadrature.hpp"

namespace entroscope::scaling {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double min_value(const EntropySeries& s) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [x, v] : s.points) m = std::min(m, v);
  return m;
}

struct LogLog {
  double exponent, coefficient;
};

// Slope/intercept of ln(value - offset) against ln(param).
LogLog loglog_fit(const EntropySeries& s, double offset) {
  const std::size_t n = s.points.size();
  double mt = 0.0, my = 0.0;
  for (const auto& [x, v] : s.points) {
    mt += std::log(x);
    my += std::log(v - offset);
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0;
  for (const auto& [x, v] : s.points) {
    const double dt = std::log(x) - mt;
    stt += dt * dt;
    sty += dt * (std::log(v - offset) - my);
  }
  const double slope = sty / stt;
  return LogLog{-slope, std::exp(my - slope * mt)};
}

double power_residual_rms(const EntropySeries& s, double exponent, double coefficient,
                          double offset) {
  double sse = 0.0;
  for (const auto& [x, v] : s.points) {
    const double r = v - (coefficient * std::pow(x, -exponent) + offset);
    sse += r * r;
  }
  return std::sqrt(sse / s.points.size());
}

// Median value of the largest-param quartile; the subleading-term absorber.
double tail_median(const EntropySeries& s) {
  const std::size_t n = s.points.size();
  const std::size_t q = std::max<std::size_t>(1, (n + 3) / 4);
  std::vector<double> tail;
  for (std::size_t i = n - q; i < n; ++i) tail.push_back(s.points[i].second);
  return median(std::move(tail));
}

}  // namespace

EntropySeries::EntropySeries(std::vector<std::pair<double, double>> pts,
                             std::string name, std::map<std::string, std::string> m)
    : points(std::move(pts)), param_name(std::move(name)), meta(std::move(m)) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0.0)) throw domain_error("series params must be positive");
    if (i > 0 && !(points[i].first > points[i - 1].first))
      throw domain_error("series params must be strictly increasing");
  }
}

const char* to_string(DivergenceFit::Kind kind) {
  switch (kind) {
    case DivergenceFit::Kind::power: return "power";
    case DivergenceFit::Kind::log: return "log";
    default: return "none";
  }
}

CollisionGeometry CollisionGeometry::flat(double V, geom::SpatialDim dim) {
  if (!(V > 0.0)) throw domain_error("V must be positive");
  return CollisionGeometry{Kind::flat, V, dim};
}
CollisionGeometry CollisionGeometry::parabolic(double R, geom::SpatialDim dim) {
  if (!(R > 0.0)) throw domain_error("R must be positive");
  return CollisionGeometry{Kind::parabolic, R, dim};
}
CollisionGeometry CollisionGeometry::corner(double m, geom::SpatialDim dim) {
  if (!(m > 0.0)) throw domain_error("m must be positive");
  return CollisionGeometry{Kind::corner, m, dim};
}

double scale_integral_entropy(double L, double r_uv, double r_ir, geom::SpatialDim dim) {
  if (!(L > 0.0)) throw domain_error("L must be positive");
  if (!(r_uv > 0.0 && r_uv < r_ir && r_ir <= L))
    throw domain_error("scales must satisfy 0 < r_uv < r_ir <= L");
  if (dim.d == 1) return std::log(r_ir / r_uv);
  const double p = dim.d - 1;
  return std::pow(L, p) / p * (std::pow(r_uv, -p) - std::pow(r_ir, -p));
}

DivergenceFit predicted_collision_exponent(const CollisionGeometry& geometry) {
  DivergenceFit out;
  out.coefficient = 1.0;
  out.note = "universal-prefactor-unfixed";
  const int d = geometry.dim.d;
  switch (geometry.kind) {
    case CollisionGeometry::Kind::flat:
      if (d == 1) {
        out.kind = DivergenceFit::Kind::log;
      } else {
        out.kind = DivergenceFit::Kind::power;
        out.exponent = d - 1;
      }
      break;
    case CollisionGeometry::Kind::parabolic:
      if (d == 1) {
        // No transverse shell in one dimension; the collision is flat-like.
        out.kind = DivergenceFit::Kind::log;
      } else {
        out.kind = DivergenceFit::Kind::power;
        out.exponent = 0.5 * (d - 1);
      }
      break;
    case CollisionGeometry::Kind::corner:
      out.kind = DivergenceFit::Kind::log;
      break;
  }
  return out;
}

double parabolic_collision_integral(double R, double x, double rho_c,
                                    geom::SpatialDim dim) {
  if (dim.d < 2) throw domain_error("parabolic collision integral requires d >= 2");
  if (!(R > 0.0)) throw domain_error("R must be positive");
  if (!(x > 0.0)) throw domain_error("x must be positive");
  const double scale = std::sqrt(R * x);
  if (!(rho_c >= 10.0 * scale))
    throw domain_error("rho_c must be at least 10*sqrt(R*x)");
  const int d = dim.d;
  auto f = [&](double rho) {
    return std::pow(rho, d - 2) / std::pow(x + rho * rho / R, d - 1);
  };
  std::vector<double> cuts{0.0};
  for (double c : {scale, 10.0 * scale})
    if (c < rho_c) cuts.push_back(c);
  cuts.push_back(rho_c);
  return quad::integrate_segments(f, cuts, 1e-10);
}

FermiLiquidResult fermi_liquid_mi(double k_F, double V, double x, double x_ref,
                                  geom::SpatialDim dim, double coeff) {
  if (!(k_F > 0.0)) throw domain_error("k_F must be positive");
  if (!(V > 0.0)) throw domain_error("V must be positive");
  if (!(x > 0.0)) throw domain_error("x must be positive");
  if (!(x_ref > 0.0)) throw domain_error("x_ref must be positive");
  const double value =
      coeff * std::pow(k_F, dim.d - 1) * V * std::log(x_ref / x);
  return FermiLiquidResult{value, k_F * x < 3.0, x >= x_ref};
}

PowerModelFit fit_power_model(const EntropySeries& series) {
  PowerModelFit out{0.0, 0.0, 0.0, std::numeric_limits<double>::infinity(), false, ""};
  const double v_min = min_value(series);
  if (v_min <= 0.0) {
    out.note = "power model skipped: nonpositive values";
    return out;
  }
  double v_max = v_min;
  for (const auto& [x, v] : series.points) v_max = std::max(v_max, v);
  const double range = v_max - v_min;

  auto rms_at = [&](double offset) {
    const LogLog ll = loglog_fit(series, offset);
    return power_residual_rms(series, ll.exponent, ll.coefficient, offset);
  };
  auto try_offset = [&](double offset) {
    if (!(v_min - offset > 0.0)) return;
    const LogLog ll = loglog_fit(series, offset);
    const double rms = power_residual_rms(series, ll.exponent, ll.coefficient, offset);
    if (rms < out.residual_rms) {
      out = PowerModelFit{ll.exponent, ll.coefficient, offset, rms, true, ""};
    }
  };

  // Seed with zero and the tail-median subleading estimate, then minimize
  // the value-space residual over admissible offsets o < min(value). The
  // offset scale is unknown over many decades, so sweep u = min(value) - o
  // on a log grid and polish with golden sections in log(u). The upper cap
  // 10x the value range keeps the degenerate p -> 0 limit (which can mimic
  // a logarithm) out of reach.
  try_offset(0.0);
  try_offset(tail_median(series));
  if (range > 0.0) {
    const double u_min = 1e-9 * range;
    const double u_max = 10.0 * range;
    const int sweep = 128;
    double best_u = u_max;
    double best_rms = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= sweep; ++i) {
      const double u = u_min * std::pow(u_max / u_min, double(i) / sweep);
      const double r = rms_at(v_min - u);
      if (r < best_rms) {
        best_rms = r;
        best_u = u;
      }
    }
    const double ratio = std::pow(u_max / u_min, 1.0 / sweep);
    constexpr double kGolden = 0.6180339887498949;
    double a = std::log(std::max(u_min, best_u / ratio));
    double b = std::log(std::min(u_max, best_u * ratio));
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = rms_at(v_min - std::exp(x1)), f2 = rms_at(v_min - std::exp(x2));
    for (int it = 0; it < 100; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kGolden * (b - a);
        f1 = rms_at(v_min - std::exp(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kGolden * (b - a);
        f2 = rms_at(v_min - std::exp(x2));
      }
    }
    try_offset(v_min - best_u);
    try_offset(v_min - std::exp(f1 < f2 ? x1 : x2));
  }

  if (out.valid && !(out.exponent > 0.0)) {
    out.valid = false;
    out.note = "power model rejected: no divergent trend toward small param";
  }
  return out;
}

LogModelFit fit_log_model(const EntropySeries& series) {
  const std::size_t n = series.points.size();
  double mt = 0.0, mv = 0.0;
  for (const auto& [x, v] : series.points) {
    mt += std::log(1.0 / x);
    mv += v;
  }
  mt /= n;
  mv /= n;
  double stt = 0.0, stv = 0.0;
  for (const auto& [x, v] : series.points) {
    const double dt = std::log(1.0 / x) - mt;
    stt += dt * dt;
    stv += dt * (v - mv);
  }
  const double coefficient = stv / stt;
  const double offset = mv - coefficient * mt;
  double sse = 0.0;
  for (const auto& [x, v] : series.points) {
    const double r = v - (coefficient * std::log(1.0 / x) + offset);
    sse += r * r;
  }
  return LogModelFit{coefficient, offset, std::sqrt(sse / n)};
}

DivergenceFit fit_divergence(const EntropySeries& series) {
  const std::size_t n = series.points.size();
  if (n < 6) throw domain_error("fit_divergence needs at least 6 points");
  const double p_min = series.points.front().first;
  const double p_max = series.points.back().first;
  if (!(p_max / p_min >= 10.0))
    throw domain_error("fit_divergence needs at least one decade in param");

  const PowerModelFit power = fit_power_model(series);
  const LogModelFit logm = fit_log_model(series);

  DivergenceFit out;
  out.window = {p_min, p_max};
  if (power.valid && power.residual_rms < logm.residual_rms) {
    out.kind = DivergenceFit::Kind::power;
    out.exponent = power.exponent;
    out.coefficient = power.coefficient;
    out.offset = power.offset;
    out.residual_rms = power.residual_rms;
  } else {
    out.kind = DivergenceFit::Kind::log;
    out.coefficient = logm.coefficient;
    out.offset = logm.offset;
    out.residual_rms = logm.residual_rms;
    if (!power.valid) out.note = power.note;
  }

  double v_min = series.points.front().second, v_max = v_min;
  for (const auto& [x, v] : series.points) {
    v_min = std::min(v_min, v);
    v_max = std::max(v_max, v);
  }
  if (out.residual_rms > 0.1 * (v_max - v_min)) {
    out.kind = DivergenceFit::Kind::none;
    out.exponent = 0.0;
    out.coefficient = 0.0;
    out.offset = 0.0;
    out.note = "no clean divergence model";
  }
  return out;
}

}  // namespace entroscope::scaling
