#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "entroscope/errors.hpp"

namespace entroscope::lattice {

// Disjoint integer site intervals [s_i, e_i] (inclusive) on the infinite
// chain, plus the Fermi momentum. Half filling (k_F = pi/2) is the default.
struct LatticeBlockSpec {
  std::vector<std::pair<long, long>> blocks;
  double k_F;
  explicit LatticeBlockSpec(std::vector<std::pair<long, long>> blocks,
                            double k_F = 1.5707963267948966);
  std::vector<long> sites() const;
};

// Real symmetric matrix of ground-state two-point functions <c_i^+ c_j>.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(Eigen::MatrixXd entries);
  const Eigen::MatrixXd& entries() const { return m_; }
  long size() const { return m_.rows(); }

 private:
  Eigen::MatrixXd m_;
};

struct RenyiIndex {
  double n = 1.0;  // n = 1 is von Neumann
  RenyiIndex() = default;
  explicit RenyiIndex(double index) : n(index) {
    if (!(n >= 1.0)) throw domain_error("Renyi index n must be >= 1");
  }
};

// Infinite-chain ground-state correlations over the blocks' sites:
// C_ij = sin(k_F (i-j)) / (pi (i-j)), C_ii = k_F / pi.
CorrelationMatrix build_correlation_matrix(const LatticeBlockSpec& spec);

// Open-chain variant built from the exact finite-chain eigenmodes at half
// filling, restricted to `block_sites`. Exists for the purity check
// S_block = S_complement; everything else uses the infinite chain.
CorrelationMatrix finite_chain_correlation_matrix(long n_total,
                                                  const std::vector<long>& block_sites);

// Entanglement entropy from the correlation spectrum, in nats. Eigenvalues
// are required to lie in [-1e-10, 1+1e-10] and are clipped to
// [1e-14, 1-1e-14] before the logs.
double entropy_from_correlations(const CorrelationMatrix& C, RenyiIndex n = {});

// S_A + S_B - S_{A u B} for blocks [0, L-1] and [L+x, 2L+x-1] (gap of x
// sites). Values in [-1e-9, 0) are clamped to zero; anything lower is a
// numerical failure.
double lattice_mutual_information(long L, long x, double k_F = 1.5707963267948966,
                                  RenyiIndex n = {});

}  // namespace entroscope::lattice
