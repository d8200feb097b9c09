#ifndef ETAFLOW_LAGRANGIAN_HPP
#define ETAFLOW_LAGRANGIAN_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "etaflow/eta_result.hpp"
#include "etaflow/numerics.hpp"

namespace etaflow {

/*
 * Hermitian lagrangian in E + E, J = diag(-i, i), stored through its graph
 * unitary: L = { (x, T x) : x in E_+ } for a unitary T identified with an
 * isometry E_+ -> E_-.  The involution L <-> JL is T <-> -T, and
 * intersection dimensions reduce to kernel ranks:
 *
 *   dim(L0 ^ L1)   = dim ker(T0 - T1)
 *   dim(L0 ^ J L1) = dim ker(T0 + T1)
 */
class HermitianLagrangian {
 public:
  explicit HermitianLagrangian(Eigen::MatrixXcd graph_unitary);

  int dim() const { return static_cast<int>(graph_.rows()); }
  const Eigen::MatrixXcd& graph_unitary() const { return graph_; }
  HermitianLagrangian conjugate_j() const { return HermitianLagrangian(-graph_); }

 private:
  Eigen::MatrixXcd graph_;
};

/*
 * tau(T0, T1) = (1 / 2 pi i) tr log(T1^{-1} T0) with the log branch fixed by
 * log(-1) = i pi (signed angles in (-pi, pi]).  Satisfies
 *   exp(2 pi i tau) = det T0 / det T1
 *   tau(T0, T1) + tau(T1, T0) = dim ker(T0 + T1).
 */
double tau(const Eigen::MatrixXcd& t0, const Eigen::MatrixXcd& t1);
double tau(const HermitianLagrangian& l0, const HermitianLagrangian& l1);

// dim(L0 ^ L1), computed as the rank deficiency of T0 - T1
int intersection_dim(const HermitianLagrangian& l0, const HermitianLagrangian& l1);

/*
 * Hermitian Kashiwara-Wall index
 *   omega(L0, L1, L2) = tau(L1, L0) + tau(L2, L1) + tau(L0, L2),
 * an integer (the tau exponentials telescope).  Throws consistency_error if
 * the computed value is farther than 1e-6 from an integer.
 */
int kashiwara_index(const HermitianLagrangian& l0, const HermitianLagrangian& l1,
                    const HermitianLagrangian& l2);

/*
 * Spectrum of the operator J d/dt on [0, 1] with boundary values in L0 at 0
 * and L1 at 1: the union over the eigenangle set {theta_k} of T1^{-1} T0
 * (angles in (0, 2 pi]) of the progressions theta_k / 2 + pi Z.
 */
std::vector<std::pair<double, int>> pair_spectrum(const HermitianLagrangian& l0,
                                                  const HermitianLagrangian& l1, double lo,
                                                  double hi);

/*
 * Reduced eta invariant of the two-lagrangian operator:
 *   xi(L0, L1) = ( dim(L0 ^ L1) + sum_{theta_k in (0, 2 pi)} (1 - theta_k / pi) ) / 2.
 * Cross-checked internally against the closed form xi = tau(J L1, L0) to 1e-10.
 */
EtaResult pair_xi(const HermitianLagrangian& l0, const HermitianLagrangian& l1);

}  // namespace etaflow

#endif
