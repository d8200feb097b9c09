#ifndef ETAFLOW_INTERVAL_BVP_HPP
#define ETAFLOW_INTERVAL_BVP_HPP

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "etaflow/eta_result.hpp"
#include "etaflow/measure_potential.hpp"
#include "etaflow/numerics.hpp"

namespace etaflow {

struct IntervalData {
  double length;
  PiecewisePoly potential;  // density a_k on [0, length]
};

/*
 * Selfadjoint Dirac system on a disjoint union of intervals I_1..I_n,
 * (-i d/dt + a_k) u_k per interval, with the lagrangian boundary condition
 * (incoming values) = T (outgoing values) for a unitary transmission matrix T.
 *
 * Solving -i u' + a u = lambda u across interval k multiplies the boundary
 * value by d_k(lambda) = exp(i lambda l_k - i alpha_k), alpha_k = int a_k, so
 * lambda is an eigenvalue iff det(I - D(lambda) T) = 0 -- the secular
 * determinant of a quantum graph with one edge per interval.
 */
class IntervalSystem {
 public:
  IntervalSystem(std::vector<IntervalData> intervals, Eigen::MatrixXcd transmission);

  int size() const { return static_cast<int>(intervals_.size()); }
  double total_length() const { return total_length_; }
  const std::vector<IntervalData>& intervals() const { return intervals_; }
  const Eigen::MatrixXcd& transmission() const { return transmission_; }
  double potential_integral(int k) const { return alpha_[static_cast<std::size_t>(k)]; }

  // det(I - D(lambda) T); entire in lambda, zeros exactly the eigenvalues
  cplx secular_det(cplx lambda) const;

  /*
   * All eigenvalues in [lo, hi] with multiplicities.  The monodromy
   * U(lambda) = D(lambda) T is unitary on the real axis with eigenvalue
   * angles strictly increasing in lambda (total speed = total length), so the
   * integer counting function (arg det U - sum of angles)/2 pi locates every
   * root by bisection, including multiple ones; roots are refined to ~1e-12
   * and multiplicities confirmed as the nullity of I - U via singular values.
   */
  std::vector<std::pair<double, int>> spectrum(double lo, double hi) const;

  /*
   * Reduced eta invariant for systems whose spectrum is a finite union of
   * arithmetic progressions: weighted-permutation transmission matrices
   * (one progression per coupling cycle) or equal interval lengths (one
   * progression per eigenvalue of the reduced unitary T* diag(e^{i alpha_k})).
   * Throws unsupported_structure_error otherwise.
   */
  EtaResult eta_xi() const;

  // monodromy U(lambda) = D(lambda) T at real lambda
  Eigen::MatrixXcd monodromy(double lambda) const;

 private:
  double counting(double lambda) const;  // integer-valued eigenvalue counter
  int nullity(double lambda) const;

  std::vector<IntervalData> intervals_;
  Eigen::MatrixXcd transmission_;
  std::vector<double> alpha_;
  double total_length_ = 0.0;
  double det_t_arg_ = 0.0;
};

/*
 * Realize the circle operator of a nice potential as a transmission system
 * over a partition containing all jump positions: intervals [t_{j-1}, t_j],
 * per-interval restriction of the density, and the cyclic transmission
 * matrix with phases e^{-i c_j} at the interior partition points (phase 1
 * where the potential has no jump) plus the periodic wrap in the first row.
 */
IntervalSystem from_split(const MeasurePotential& p, std::vector<double> partition);

// index of the boundary value problem defined by a subspace V of the
// 2n-dimensional boundary space: dim V - n
int boundary_index(int n, int v_dim);

/*
 * Diagnostic for the split realization: computes u = (i + T_A)^{-1} f by the
 * explicit kernel formula via panel quadrature and returns the largest
 * violation among (i) the per-interval ODE residual -i u' + a u + i u - f
 * (derivative by high-order finite differences on interior points),
 * (ii) the jump conditions u(t_j^+) = e^{-i c_j} u(t_j^-), and (iii) the
 * periodic wrap u(L) = u(0).
 */
double split_equivalence_residual(const MeasurePotential& p, std::vector<double> partition,
                                  const std::function<cplx(double)>& f, int samples = 2048);

}  // namespace etaflow

#endif
