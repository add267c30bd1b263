#pragma once

// Brute-force many-body oracle for small free-fermion systems: builds the
// explicit 2^m-dimensional density matrix of a Gaussian state from its
// correlation matrix, traces out trailing modes, and takes entropies from
// the spectrum of the matrix itself. Independent of the correlation-matrix
// entropy formula it is used to check.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace fock_oracle {

// Jordan-Wigner annihilation operator for mode `site` of `m` modes, mode 0
// being the leading tensor factor.
inline Eigen::MatrixXd jw_annihilator(int m, int site) {
  Eigen::Matrix2d sz, sm, id;
  sz << 1, 0, 0, -1;
  sm << 0, 1, 0, 0;  // |1> -> |0>
  id.setIdentity();
  Eigen::MatrixXd op = Eigen::MatrixXd::Ones(1, 1);
  for (int k = 0; k < m; ++k) {
    const Eigen::Matrix2d& factor = k < site ? sz : (k == site ? sm : id);
    Eigen::MatrixXd next(op.rows() * 2, op.cols() * 2);
    for (int a = 0; a < op.rows(); ++a)
      for (int b = 0; b < op.cols(); ++b)
        next.block(2 * a, 2 * b, 2, 2) = op(a, b) * factor;
    op = std::move(next);
  }
  return op;
}

// Density matrix of the Gaussian state with two-point matrix C (real
// symmetric, eigenvalues in [0, 1]) over its modes, in JW mode order.
inline Eigen::MatrixXd gaussian_density_matrix(const Eigen::MatrixXd& C) {
  const int m = static_cast<int>(C.rows());
  const int dim = 1 << m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
  const Eigen::MatrixXd U = es.eigenvectors();
  const Eigen::VectorXd nu = es.eigenvalues();

  std::vector<Eigen::MatrixXd> c_ops;
  for (int i = 0; i < m; ++i) c_ops.push_back(jw_annihilator(m, i));

  Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(dim, dim);
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < m; ++i) d += U(i, k) * c_ops[i];
    const Eigen::MatrixXd n_k = d.transpose() * d;
    rho = rho * (nu(k) * n_k +
                 (1.0 - nu(k)) * (Eigen::MatrixXd::Identity(dim, dim) - n_k));
  }
  return rho;
}

// Partial trace over the trailing (least significant) tensor factor.
inline Eigen::MatrixXd trace_last(const Eigen::MatrixXd& rho) {
  const int dim = static_cast<int>(rho.rows()) / 2;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      out(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
  return out;
}

inline double entropy(const Eigen::MatrixXd& rho, double renyi_n = 1.0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0, zn = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = std::max(es.eigenvalues()(i), 0.0);
    if (p > 1e-300) {
      s -= p * std::log(p);
      zn += std::pow(p, renyi_n);
    }
  }
  return renyi_n == 1.0 ? s : std::log(zn) / (1.0 - renyi_n);
}

// Mutual information between single sites 0 and 2 of a 3-site restriction
// with correlation matrix C3 (ordered sites {0, 1, 2}). Each reduced state
// is built with a mode order that keeps traced modes trailing.
inline double three_site_mutual_information(const Eigen::MatrixXd& C3,
                                            double renyi_n = 1.0) {
  auto permuted = [&](std::vector<int> order) {
    Eigen::MatrixXd P(3, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) P(a, b) = C3(order[a], order[b]);
    return P;
  };
  // S_A, modes ordered [0, 1, 2], trace modes 2 then 1.
  const double s_a =
      entropy(trace_last(trace_last(gaussian_density_matrix(permuted({0, 1, 2})))),
              renyi_n);
  // S_B, modes ordered [2, 0, 1].
  const double s_b =
      entropy(trace_last(trace_last(gaussian_density_matrix(permuted({2, 0, 1})))),
              renyi_n);
  // S_AB, modes ordered [0, 2, 1], trace the middle site only.
  const double s_ab =
      entropy(trace_last(gaussian_density_matrix(permuted({0, 2, 1}))), renyi_n);
  return s_a + s_b - s_ab;
}

}  // namespace fock_oracle
