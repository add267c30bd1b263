#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "entroscope/cft1d.hpp"
#include "entroscope/holographic.hpp"
#include "entroscope/scaling.hpp"

using namespace entroscope;
using namespace entroscope::scaling;
using geom::SpatialDim;

namespace {
constexpr double kPi = std::numbers::pi;

EntropySeries log_grid_series(double from, double to, int n,
                              const std::function<double(double)>& f,
                              const char* name = "x") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    const double x = from * std::pow(to / from, double(i) / (n - 1));
    pts.push_back({x, f(x)});
  }
  return EntropySeries(std::move(pts), name);
}
}  // namespace

TEST_CASE("scale integral closed forms") {
  CHECK(scale_integral_entropy(100.0, 1.0, 100.0, SpatialDim{1}) ==
        doctest::Approx(std::log(100.0)).epsilon(1e-14));
  const double L = 7.0, eps = 1e-3;
  CHECK(scale_integral_entropy(L, eps, L, SpatialDim{2}) ==
        doctest::Approx(L / eps - 1.0).epsilon(1e-13));
  // d=3 leading term (L/eps)^2 / 2
  const double s3 = scale_integral_entropy(L, eps, L, SpatialDim{3});
  CHECK(s3 == doctest::Approx(0.5 * (L / eps) * (L / eps) - 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(scale_integral_entropy(1.0, 0.5, 0.2, SpatialDim{2}), domain_error);
  CHECK_THROWS_AS(scale_integral_entropy(1.0, 0.0, 0.5, SpatialDim{2}), domain_error);
}

TEST_CASE("scale integral reduces to the boundary law") {
  const double L = 2.0;
  for (int d : {2, 3}) {
    for (double eps : {1e-4, 1e-6}) {
      const double v = scale_integral_entropy(L, eps, L, SpatialDim{d});
      const double scaled = v * std::pow(eps, d - 1) / std::pow(L, d - 1);
      CHECK(scaled == doctest::Approx(1.0 / (d - 1)).epsilon(1e-3));
    }
  }
}

TEST_CASE("predicted collision exponents") {
  auto flat3 = predicted_collision_exponent(CollisionGeometry::flat(1.0, SpatialDim{3}));
  CHECK(flat3.kind == DivergenceFit::Kind::power);
  CHECK(flat3.exponent == doctest::Approx(2.0));
  CHECK(flat3.note == "universal-prefactor-unfixed");

  auto par2 =
      predicted_collision_exponent(CollisionGeometry::parabolic(1.0, SpatialDim{2}));
  CHECK(par2.kind == DivergenceFit::Kind::power);
  CHECK(par2.exponent == doctest::Approx(0.5));

  auto corner =
      predicted_collision_exponent(CollisionGeometry::corner(1.0, SpatialDim{3}));
  CHECK(corner.kind == DivergenceFit::Kind::log);

  auto flat1 = predicted_collision_exponent(CollisionGeometry::flat(1.0, SpatialDim{1}));
  CHECK(flat1.kind == DivergenceFit::Kind::log);
}

TEST_CASE("parabolic collision integral against the d=2 antiderivative") {
  // Int drho / (x + rho^2/R) = sqrt(R/x) arctan(rho_c / sqrt(R x))
  for (double x : {1e-4, 1e-3}) {
    const double R = 1.0, rho_c = 1.0;
    const double got = parabolic_collision_integral(R, x, rho_c, SpatialDim{2});
    const double closed = std::sqrt(R / x) * std::atan(rho_c / std::sqrt(R * x));
    CHECK(got == doctest::Approx(closed).epsilon(1e-9));
  }
  // the worked value at R=1, x=1e-4, rho_c=1 is 100*arctan(100)
  CHECK(parabolic_collision_integral(1.0, 1e-4, 1.0, SpatialDim{2}) ==
        doctest::Approx(100.0 * std::atan(100.0)).epsilon(1e-9));
  CHECK_THROWS_AS(parabolic_collision_integral(1.0, 1e-2, 0.5, SpatialDim{2}),
                  domain_error);
  CHECK_THROWS_AS(parabolic_collision_integral(1.0, 1e-4, 1.0, SpatialDim{1}),
                  domain_error);
}

TEST_CASE("parabolic collision integral scaling exponents") {
  for (int d : {2, 3}) {
    auto series = log_grid_series(1e-6, 1e-4, 12, [&](double x) {
      return parabolic_collision_integral(1.0, x, 1.0, SpatialDim{d});
    });
    const auto fit = fit_divergence(series);
    if (d == 2) {
      CHECK(fit.kind == DivergenceFit::Kind::power);
      CHECK(std::abs(fit.exponent - 0.5) <= 0.005);
    } else {
      CHECK(fit.kind == DivergenceFit::Kind::power);
      CHECK(std::abs(fit.exponent - 1.0) <= 0.01);
    }
  }
  // substitution check: value * x^{(d-1)/2} tends to a constant (pi/2 at d=2)
  const double v1 = parabolic_collision_integral(1.0, 1e-6, 1.0, SpatialDim{2});
  const double v2 = parabolic_collision_integral(1.0, 1e-8, 1.0, SpatialDim{2});
  CHECK(v1 * std::sqrt(1e-6) == doctest::Approx(kPi / 2.0).epsilon(1e-3));
  CHECK(v2 * std::sqrt(1e-8) == doctest::Approx(kPi / 2.0).epsilon(1e-4));
}

TEST_CASE("fermi liquid mutual information") {
  SUBCASE("d=1 with coeff 1/3 matches the CFT collision slope") {
    const double L = 1.0, x1 = 1e-6, x2 = 1e-5;
    const double dmi = cft1d::mutual_information_equal_intervals(L, x1) -
                       cft1d::mutual_information_equal_intervals(L, x2);
    const auto f1 = fermi_liquid_mi(kPi / 2, 1.0, x1, 1.0, SpatialDim{1}, 1.0 / 3.0);
    const auto f2 = fermi_liquid_mi(kPi / 2, 1.0, x2, 1.0, SpatialDim{1}, 1.0 / 3.0);
    CHECK(f1.value - f2.value == doctest::Approx(dmi).epsilon(1e-3));
  }
  SUBCASE("d=3: doubling k_F quadruples the value") {
    const auto a = fermi_liquid_mi(1.0, 1.0, 0.1, 1.0, SpatialDim{3});
    const auto b = fermi_liquid_mi(2.0, 1.0, 0.1, 1.0, SpatialDim{3});
    CHECK(b.value == doctest::Approx(4.0 * a.value).epsilon(1e-12));
  }
  SUBCASE("reference normalization and warnings") {
    CHECK(fermi_liquid_mi(5.0, 1.0, 1.0, 1.0, SpatialDim{2}).value == 0.0);
    CHECK(fermi_liquid_mi(5.0, 1.0, 2.0, 1.0, SpatialDim{2}).nonpositive);
    CHECK(fermi_liquid_mi(5.0, 1.0, 0.1, 1.0, SpatialDim{2}).outside_scaling_window);
    CHECK_FALSE(fermi_liquid_mi(5.0, 1.0, 0.9, 1.0, SpatialDim{2}).outside_scaling_window);
  }
}

TEST_CASE("fit_divergence recovers noiseless synthetics") {
  SUBCASE("pure power 5/x") {
    auto series = log_grid_series(1e-3, 1.0, 24, [](double x) { return 5.0 / x; });
    const auto fit = fit_divergence(series);
    CHECK(fit.kind == DivergenceFit::Kind::power);
    CHECK(std::abs(fit.exponent - 1.0) <= 1e-3);
    CHECK(std::abs(fit.coefficient - 5.0) <= 1e-3);
  }
  SUBCASE("pure log 2 ln(1/x) + 1") {
    auto series =
        log_grid_series(1e-3, 1.0, 24, [](double x) { return 2.0 * std::log(1.0 / x) + 1.0; });
    const auto fit = fit_divergence(series);
    CHECK(fit.kind == DivergenceFit::Kind::log);
    CHECK(std::abs(fit.coefficient - 2.0) <= 1e-3);
    CHECK(std::abs(fit.offset - 1.0) <= 1e-3);
  }
  SUBCASE("power with a large offset") {
    auto series =
        log_grid_series(1e-3, 1.0, 24, [](double x) { return 3.0 / (x * x) + 40.0; });
    const auto fit = fit_divergence(series);
    CHECK(fit.kind == DivergenceFit::Kind::power);
    CHECK(std::abs(fit.exponent - 2.0) <= 1e-3);
    CHECK(std::abs(fit.coefficient - 3.0) <= 0.003);
  }
}

TEST_CASE("fit_divergence is scale covariant") {
  auto series = log_grid_series(1e-3, 1.0, 20, [](double x) { return 2.5 / (x * x); });
  const auto base = fit_divergence(series);
  std::vector<std::pair<double, double>> scaled;
  for (auto [x, v] : series.points) scaled.push_back({13.0 * x, v});
  const auto moved = fit_divergence(EntropySeries(scaled, "x"));
  CHECK(std::abs(moved.exponent - base.exponent) <= 1e-6);
  CHECK(moved.coefficient ==
        doctest::Approx(base.coefficient * std::pow(13.0, base.exponent)).epsilon(1e-6));
}

TEST_CASE("fit_divergence cross-engine consistency") {
  SUBCASE("holographic flat strips fit a first power") {
    auto series = log_grid_series(1e-3, 3e-2, 20, [](double x) {
      return holo::two_strip_mutual_information(holo::StripConfig(1.0, 100.0, x, 1e-3));
    });
    const auto fit = fit_divergence(series);
    const auto predicted =
        predicted_collision_exponent(CollisionGeometry::flat(1.0, SpatialDim{2}));
    CHECK(fit.kind == predicted.kind);
    CHECK(std::abs(fit.exponent - predicted.exponent) <= 0.02);
  }
  SUBCASE("colliding intervals in d=1 fit a log with the c/3 coefficient") {
    auto series = log_grid_series(1e-6, 1e-4, 20, [](double x) {
      return cft1d::mutual_information_equal_intervals(1.0, x);
    });
    const auto fit = fit_divergence(series);
    const auto predicted =
        predicted_collision_exponent(CollisionGeometry::flat(1.0, SpatialDim{1}));
    CHECK(fit.kind == predicted.kind);
    CHECK(fit.kind == DivergenceFit::Kind::log);
    CHECK(fit.coefficient ==
          doctest::Approx(cft1d::singularity_coefficient()).epsilon(1e-3));
  }
}

TEST_CASE("fit_divergence edge handling") {
  SUBCASE("nonpositive values skip the power model") {
    auto series = log_grid_series(1e-2, 1.0, 12,
                                  [](double x) { return std::log(1.0 / x) - 2.0; });
    const auto fit = fit_divergence(series);
    CHECK(fit.kind == DivergenceFit::Kind::log);
    CHECK(fit.note.find("power model skipped") != std::string::npos);
  }
  SUBCASE("too few points or too narrow a window") {
    std::vector<std::pair<double, double>> few{{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}};
    CHECK_THROWS_AS(fit_divergence(EntropySeries(few, "x")), domain_error);
    auto narrow = log_grid_series(1.0, 2.0, 10, [](double x) { return 1.0 / x; });
    CHECK_THROWS_AS(fit_divergence(narrow), domain_error);
  }
  SUBCASE("structureless data yields kind none") {
    std::vector<std::pair<double, double>> wild;
    const double vals[] = {3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8};
    for (int i = 0; i < 12; ++i) wild.push_back({0.01 * std::pow(10.0, i / 4.0), vals[i]});
    const auto fit = fit_divergence(EntropySeries(wild, "x"));
    CHECK(fit.kind == DivergenceFit::Kind::none);
  }
  SUBCASE("series validation") {
    std::vector<std::pair<double, double>> bad{{1, 1}, {1, 2}};
    CHECK_THROWS_AS(EntropySeries(bad, "x"), domain_error);
    std::vector<std::pair<double, double>> neg{{-1, 1}, {2, 2}};
    CHECK_THROWS_AS(EntropySeries(neg, "x"), domain_error);
  }
}
