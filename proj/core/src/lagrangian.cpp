#include "etaflow/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "etaflow/errors.hpp"

namespace etaflow {

namespace {
const double kTwoPi = 2.0 * std::numbers::pi;

void require_same_dim(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const char* who) {
  if (a.rows() != b.rows()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}
}  // namespace

HermitianLagrangian::HermitianLagrangian(Eigen::MatrixXcd graph_unitary)
    : graph_(std::move(graph_unitary)) {
  const auto n = graph_.rows();
  if (n != graph_.cols() || n == 0)
    throw std::invalid_argument("HermitianLagrangian: graph unitary must be square");
  const double defect =
      (graph_.adjoint() * graph_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-12)
    throw std::invalid_argument("HermitianLagrangian: graph matrix not unitary to 1e-12");
}

double tau(const Eigen::MatrixXcd& t0, const Eigen::MatrixXcd& t1) {
  require_same_dim(t0, t1, "tau");
  const Eigen::MatrixXcd ratio = t1.adjoint() * t0;  // T1^{-1} T0 for unitary T1
  double total = 0.0;
  for (double theta : unitary_eig_angles(ratio)) {
    if (theta < kTwoPi) total += principal_angle(theta);
  }
  return total / kTwoPi;
}

double tau(const HermitianLagrangian& l0, const HermitianLagrangian& l1) {
  return tau(l0.graph_unitary(), l1.graph_unitary());
}

int intersection_dim(const HermitianLagrangian& l0, const HermitianLagrangian& l1) {
  const Eigen::MatrixXcd diff = l0.graph_unitary() - l1.graph_unitary();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
  int dim = 0;
  for (Eigen::Index i = 0; i < diff.rows(); ++i)
    if (svd.singularValues()[i] < 1e-8) ++dim;
  return dim;
}

int kashiwara_index(const HermitianLagrangian& l0, const HermitianLagrangian& l1,
                    const HermitianLagrangian& l2) {
  const double w = tau(l1, l0) + tau(l2, l1) + tau(l0, l2);
  const double nearest = std::round(w);
  if (std::abs(w - nearest) > 1e-6)
    throw consistency_error("kashiwara_index: value " + std::to_string(w) +
                            " is not an integer to 1e-6");
  return static_cast<int>(nearest);
}

std::vector<std::pair<double, int>> pair_spectrum(const HermitianLagrangian& l0,
                                                  const HermitianLagrangian& l1, double lo,
                                                  double hi) {
  require_same_dim(l0.graph_unitary(), l1.graph_unitary(), "pair_spectrum");
  const Eigen::MatrixXcd ratio = l1.graph_unitary().adjoint() * l0.graph_unitary();
  const std::vector<double> angles = unitary_eig_angles(ratio);

  // cluster equal angles into multiplicities
  std::vector<std::pair<double, int>> clusters;
  for (double theta : angles) {
    if (!clusters.empty() && std::abs(theta - clusters.back().first) < 1e-10)
      clusters.back().second += 1;
    else
      clusters.emplace_back(theta, 1);
  }

  std::vector<std::pair<double, int>> out;
  for (const auto& [theta, mult] : clusters) {
    const double base = 0.5 * theta;
    const int kmin = static_cast<int>(std::ceil((lo - base) / std::numbers::pi - 1.0));
    const int kmax = static_cast<int>(std::floor((hi - base) / std::numbers::pi + 1.0));
    for (int k = kmin; k <= kmax; ++k) {
      const double lambda = base + std::numbers::pi * k;
      if (lambda >= lo && lambda <= hi) out.emplace_back(lambda, mult);
    }
  }
  std::sort(out.begin(), out.end());
  // merge coincidences between different progressions
  std::vector<std::pair<double, int>> merged;
  for (const auto& ev : out) {
    if (!merged.empty() && std::abs(ev.first - merged.back().first) < 1e-10)
      merged.back().second += ev.second;
    else
      merged.push_back(ev);
  }
  return merged;
}

EtaResult pair_xi(const HermitianLagrangian& l0, const HermitianLagrangian& l1) {
  require_same_dim(l0.graph_unitary(), l1.graph_unitary(), "pair_xi");
  const Eigen::MatrixXcd ratio = l1.graph_unitary().adjoint() * l0.graph_unitary();
  std::vector<double> fractions;
  for (double theta : unitary_eig_angles(ratio)) fractions.push_back(theta / kTwoPi);
  EtaResult result = eta_from_fractions(fractions, 1e-9);

  // second route: xi(L0, L1) = tau(J L1, L0)
  const double via_tau = tau(l1.conjugate_j(), l0);
  if (std::abs(result.xi - via_tau) > 1e-10)
    throw consistency_error("pair_xi: eta route " + std::to_string(result.xi) +
                            " disagrees with tau route " + std::to_string(via_tau));
  return result;
}

}  // namespace etaflow
