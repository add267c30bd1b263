#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "entroscope/cft1d.hpp"
#include "entroscope/geometry.hpp"
#include "entroscope/holographic.hpp"
#include "entroscope/lattice.hpp"
#include "entroscope/scaling.hpp"
#include "entroscope/twist.hpp"

using namespace entroscope;

static void BM_lattice_entropy(benchmark::State& state) {
  const long L = state.range(0);
  const auto C = lattice::build_correlation_matrix(lattice::LatticeBlockSpec({{0, L - 1}}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice::entropy_from_correlations(C));
  }
}
BENCHMARK(BM_lattice_entropy)->Arg(64)->Arg(256)->Arg(512);

static void BM_lattice_mutual_information(benchmark::State& state) {
  const long L = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice::lattice_mutual_information(L, 8));
  }
}
BENCHMARK(BM_lattice_mutual_information)->Arg(32)->Arg(128);

static void BM_circle_self_integral(benchmark::State& state) {
  const int panels = static_cast<int>(state.range(0));
  const auto mesh =
      geom::discretize_boundary(geom::Circle{1.0}, panels, geom::SpatialDim{2});
  const twist::TwistKernelConfig cfg{geom::SpatialDim{2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(twist::self_entropy_integral(mesh, 0.05, cfg));
  }
}
BENCHMARK(BM_circle_self_integral)->Arg(512)->Arg(2048)->Arg(8192);

static void BM_circle_reduced_quadrature(benchmark::State& state) {
  const twist::TwistKernelConfig cfg{geom::SpatialDim{2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(twist::circle_entropy_reduced(1.0, 1e-4, cfg));
  }
}
BENCHMARK(BM_circle_reduced_quadrature);

static void BM_wedge_log_coefficient(benchmark::State& state) {
  const twist::TwistKernelConfig cfg{geom::SpatialDim{2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        twist::wedge_log_coefficient(std::numbers::pi / 3.0, 1.0, cfg));
  }
}
BENCHMARK(BM_wedge_log_coefficient);

static void BM_two_strip_mi(benchmark::State& state) {
  const holo::StripConfig cfg(1.0, 100.0, 0.1, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(holo::two_strip_mutual_information(cfg));
  }
}
BENCHMARK(BM_two_strip_mi);

static void BM_adiabatic_parabolic(benchmark::State& state) {
  const auto profile = holo::AdiabaticProfile::parabolic(
      1e-4, 1.0, std::numeric_limits<double>::infinity(), -10.0, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(holo::adiabatic_mutual_information(profile));
  }
}
BENCHMARK(BM_adiabatic_parabolic);

static void BM_fit_divergence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    const double x = 1e-3 * std::pow(1000.0, double(i) / (n - 1));
    pts.push_back({x, 5.0 / x + 3.0});
  }
  const scaling::EntropySeries series(pts, "x");
  for (auto _ : state) {
    benchmark::DoNotOptimize(scaling::fit_divergence(series));
  }
}
BENCHMARK(BM_fit_divergence)->Arg(20)->Arg(80);

BENCHMARK_MAIN();
