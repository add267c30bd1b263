#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "entroscope/errors.hpp"

namespace entroscope::detail {

struct LinearFit {
  std::vector<double> coeff;
  double residual_rms = 0.0;
};

// Ordinary least squares y ~ sum_k coeff_k * basis_k(x), solved by
// column-pivoted QR. residual_rms is reported in value space.
inline LinearFit lsq_fit(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& y) {
  const std::size_t n = rows.size();
  if (n == 0 || y.size() != n) throw domain_error("least squares needs matching rows");
  const std::size_t k = rows.front().size();
  if (n < k) throw domain_error("least squares is underdetermined");
  Eigen::MatrixXd A(n, k);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != k) throw domain_error("ragged basis rows");
    for (std::size_t j = 0; j < k; ++j) A(i, j) = rows[i][j];
    b(i) = y[i];
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  const double sse = (A * x - b).squaredNorm();
  LinearFit out;
  out.coeff.assign(x.data(), x.data() + k);
  out.residual_rms = std::sqrt(sse / static_cast<double>(n));
  return out;
}

}  // namespace entroscope::detail
