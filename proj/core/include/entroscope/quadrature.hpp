#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "entroscope/errors.hpp"

namespace entroscope::quad {

namespace detail {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1].
inline constexpr double kNodes[8] = {
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
inline constexpr double kKronrodW[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
// Gauss-7 weights at nodes 0, 2, 4, 6 of the table above.
inline constexpr double kGaussW[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& error) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double kron = kKronrodW[0] * f0;
  double gauss = kGaussW[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kNodes[i];
    const double fs = f(mid + dx) + f(mid - dx);
    kron += kKronrodW[i] * fs;
    if ((i & 1) == 0) gauss += kGaussW[i / 2] * fs;
  }
  kron *= half;
  gauss *= half;
  const double diff = std::abs(kron - gauss);
  value = kron;
  // QUADPACK-style sharpening: the raw |K-G| gap overestimates the error of
  // the Kronrod value once it is small.
  error = std::min(diff, std::pow(200.0 * diff, 1.5));
}

struct Interval {
  double a, b, value, error;
};

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over the segments defined by the
// sorted breakpoint list. Splits the interval with the largest error
// estimate until sum(err) <= max(rel_tol*|sum(value)|, abs_tol).
template <class F>
double integrate_segments(const F& f, const std::vector<double>& breakpoints,
                          double rel_tol, double abs_tol = 0.0,
                          int max_intervals = 20000) {
  std::vector<detail::Interval> heap;
  auto push = [&](double a, double b) {
    detail::Interval iv{a, b, 0.0, 0.0};
    detail::gk15(f, a, b, iv.value, iv.error);
    heap.push_back(iv);
  };
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (breakpoints[i + 1] > breakpoints[i]) push(breakpoints[i], breakpoints[i + 1]);
  if (heap.empty()) return 0.0;

  auto worst = [&] {
    std::size_t k = 0;
    for (std::size_t i = 1; i < heap.size(); ++i)
      if (heap[i].error > heap[k].error) k = i;
    return k;
  };

  for (;;) {
    double total = 0.0, err = 0.0;
    for (const auto& iv : heap) {
      total += iv.value;
      err += iv.error;
    }
    if (err <= std::max(rel_tol * std::abs(total), abs_tol)) return total;
    if (static_cast<int>(heap.size()) >= max_intervals)
      throw numerical_error("adaptive quadrature failed to converge");
    const std::size_t k = worst();
    const detail::Interval iv = heap[k];
    const double mid = 0.5 * (iv.a + iv.b);
    if (!(mid > iv.a && mid < iv.b))
      throw numerical_error("adaptive quadrature stalled on a degenerate interval");
    detail::Interval left{iv.a, mid, 0.0, 0.0}, right{mid, iv.b, 0.0, 0.0};
    detail::gk15(f, left.a, left.b, left.value, left.error);
    detail::gk15(f, right.a, right.b, right.value, right.error);
    heap[k] = left;
    heap.push_back(right);
  }
}

template <class F>
double integrate(const F& f, double a, double b, double rel_tol,
                 double abs_tol = 0.0, int max_intervals = 20000) {
  return integrate_segments(f, std::vector<double>{a, b}, rel_tol, abs_tol,
                            max_intervals);
}

}  // namespace entroscope::quad
