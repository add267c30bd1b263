#include "entroscope/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace entroscope::lattice {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClip = 1e-14;

std::vector<double> correlation_spectrum(const CorrelationMatrix& C) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(C.entries(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("correlation-matrix eigensolve failed");
  std::vector<double> nu(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + C.size());
  for (double v : nu) {
    if (v < -1e-10 || v > 1.0 + 1e-10)
      throw numerical_error("correlation eigenvalue " + std::to_string(v) +
                            " outside [0, 1] beyond tolerance");
  }
  for (double& v : nu) v = std::clamp(v, kClip, 1.0 - kClip);
  return nu;
}

}  // namespace

LatticeBlockSpec::LatticeBlockSpec(std::vector<std::pair<long, long>> blocks_in,
                                   double k_F_in)
    : blocks(std::move(blocks_in)), k_F(k_F_in) {
  if (blocks.empty()) throw domain_error("blocks must be nonempty");
  if (!(k_F > 0.0 && k_F < kPi)) throw domain_error("k_F must lie in (0, pi)");
  for (const auto& [s, e] : blocks)
    if (s > e) throw domain_error("block start must not exceed block end");
  auto sorted = blocks;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].second >= sorted[i + 1].first)
      throw domain_error("blocks must be pairwise disjoint");
  blocks = std::move(sorted);
}

std::vector<long> LatticeBlockSpec::sites() const {
  std::vector<long> out;
  for (const auto& [s, e] : blocks)
    for (long i = s; i <= e; ++i) out.push_back(i);
  return out;
}

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw domain_error("correlation matrix must be square");
  if (m_.rows() == 0) throw domain_error("correlation matrix must be nonempty");
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw domain_error("correlation matrix must be symmetric within 1e-12");
}

CorrelationMatrix build_correlation_matrix(const LatticeBlockSpec& spec) {
  const std::vector<long> sites = spec.sites();
  const long n = static_cast<long>(sites.size());
  Eigen::MatrixXd C(n, n);
  for (long a = 0; a < n; ++a) {
    C(a, a) = spec.k_F / kPi;
    for (long b = a + 1; b < n; ++b) {
      const double d = static_cast<double>(sites[a] - sites[b]);
      const double v = std::sin(spec.k_F * d) / (kPi * d);
      C(a, b) = v;
      C(b, a) = v;
    }
  }
  return CorrelationMatrix(std::move(C));
}

CorrelationMatrix finite_chain_correlation_matrix(long n_total,
                                                  const std::vector<long>& block_sites) {
  if (n_total < 2) throw domain_error("finite chain needs at least 2 sites");
  if (n_total % 2 != 0)
    throw domain_error("finite chain site count must be even for half filling");
  for (long s : block_sites)
    if (s < 0 || s >= n_total) throw domain_error("block site outside the chain");
  // Open-chain modes phi_k(i) = sqrt(2/(N+1)) sin(pi k (i+1)/(N+1)); the
  // lowest N/2 of them are filled at half filling.
  const long n = static_cast<long>(block_sites.size());
  const long filled = n_total / 2;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  const double norm = 2.0 / (n_total + 1.0);
  for (long k = 1; k <= filled; ++k) {
    Eigen::VectorXd phi(n);
    for (long a = 0; a < n; ++a)
      phi(a) = std::sin(kPi * k * (block_sites[a] + 1.0) / (n_total + 1.0));
    C += norm * phi * phi.transpose();
  }
  return CorrelationMatrix(std::move(C));
}

double entropy_from_correlations(const CorrelationMatrix& C, RenyiIndex n) {
  const std::vector<double> nu = correlation_spectrum(C);
  double s = 0.0;
  if (n.n == 1.0) {
    for (double v : nu) s += -v * std::log(v) - (1.0 - v) * std::log(1.0 - v);
  } else {
    const double scale = 1.0 / (1.0 - n.n);
    for (double v : nu)
      s += scale * std::log(std::pow(v, n.n) + std::pow(1.0 - v, n.n));
  }
  return s;
}

double lattice_mutual_information(long L, long x, double k_F, RenyiIndex n) {
  if (L < 1) throw domain_error("L must be a positive site count");
  if (x < 1) throw domain_error("x must be a positive site count");
  const std::pair<long, long> block_a{0, L - 1};
  const std::pair<long, long> block_b{L + x, 2 * L + x - 1};
  const double s_a =
      entropy_from_correlations(build_correlation_matrix(LatticeBlockSpec({block_a}, k_F)), n);
  const double s_b =
      entropy_from_correlations(build_correlation_matrix(LatticeBlockSpec({block_b}, k_F)), n);
  const double s_ab = entropy_from_correlations(
      build_correlation_matrix(LatticeBlockSpec({block_a, block_b}, k_F)), n);
  const double mi = s_a + s_b - s_ab;
  if (mi < -1e-9)
    throw numerical_error("mutual information came out below -1e-9: " +
                          std::to_string(mi));
  return std::max(mi, 0.0);
}

}  // namespace entroscope::lattice
