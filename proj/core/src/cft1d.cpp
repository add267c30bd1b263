#include "entroscope/cft1d.hpp"

#include <algorithm>
#include <cmath>

namespace entroscope::cft1d {

IntervalPair::IntervalPair(double a1, double b1, double a2, double b2, double epsilon)
    : a1(a1), b1(b1), a2(a2), b2(b2), epsilon(epsilon) {
  if (!(a1 < b1 && b1 < a2 && a2 < b2))
    throw domain_error("interval endpoints must satisfy a1 < b1 < a2 < b2");
  if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
  const double shortest = std::min({b1 - a1, b2 - a2, a2 - b1});
  if (!(epsilon < shortest))
    throw domain_error("epsilon must be smaller than every interval length and the gap");
}

double single_interval_entropy(double L, double epsilon, CentralCharge c) {
  if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
  if (!(L > epsilon)) throw domain_error("L must exceed the cutoff epsilon");
  return (c.c / 3.0) * std::log(L / epsilon);
}

double two_interval_entropy(const IntervalPair& p, CentralCharge c) {
  const double eps = p.epsilon;
  const double sum_cross = std::log(std::abs(p.a1 - p.b1) / eps) +
                           std::log(std::abs(p.a1 - p.b2) / eps) +
                           std::log(std::abs(p.a2 - p.b1) / eps) +
                           std::log(std::abs(p.a2 - p.b2) / eps);
  const double sub = std::log(std::abs(p.a1 - p.a2) / eps) +
                     std::log(std::abs(p.b1 - p.b2) / eps);
  return (c.c / 3.0) * (sum_cross - sub);
}

double mutual_information_equal_intervals(double L, double x, CentralCharge c) {
  if (!(L > 0.0)) throw domain_error("L must be positive");
  if (!(x > 0.0)) throw domain_error("x must be positive");
  return (c.c / 3.0) * std::log((L + x) * (L + x) / (x * (2.0 * L + x)));
}

double singularity_coefficient(CentralCharge c) { return c.c / 3.0; }

}  // namespace entroscope::cft1d
