#pragma once

#include "entroscope/errors.hpp"

namespace entroscope::cft1d {

// Universal degree-of-freedom count of the 1+1D theory. The two-interval
// formula below is the free-fermion (c = 1) one; scaling it by c is exact
// only for the single-interval entropy and the leading collision
// singularity, which is why outputs carry a functional-form note for c != 1.
struct CentralCharge {
  double c = 1.0;
  CentralCharge() = default;
  explicit CentralCharge(double charge) : c(charge) {
    if (!(c > 0.0)) throw domain_error("central charge c must be positive");
  }
};

// Two disjoint intervals [a1,b1], [a2,b2] with a shared UV cutoff epsilon.
struct IntervalPair {
  double a1, b1, a2, b2;
  double epsilon;
  IntervalPair(double a1, double b1, double a2, double b2, double epsilon);
};

// (c/3) ln(L/epsilon), in nats.
double single_interval_entropy(double L, double epsilon, CentralCharge c = {});

// (c/3) [ sum_{ij} ln(|a_i-b_j|/eps) - ln(|a1-a2|/eps) - ln(|b1-b2|/eps) ].
double two_interval_entropy(const IntervalPair& p, CentralCharge c = {});

// (c/3) ln((L+x)^2 / (x(2L+x))) for equal intervals of length L separated
// by x. Cutoff-independent and nonnegative.
double mutual_information_equal_intervals(double L, double x, CentralCharge c = {});

// Coefficient of ln(1/x) in the mutual information as the intervals collide.
double singularity_coefficient(CentralCharge c = {});

}  // namespace entroscope::cft1d
