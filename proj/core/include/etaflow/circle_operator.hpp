#ifndef ETAFLOW_CIRCLE_OPERATOR_HPP
#define ETAFLOW_CIRCLE_OPERATOR_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "etaflow/eta_result.hpp"
#include "etaflow/measure_potential.hpp"
#include "etaflow/numerics.hpp"

namespace etaflow {

/*
 * The selfadjoint operator T_{A,c} = c T_{c^{-1}A} on the circle of
 * circumference L: informally c(-i d/dt) + a(t) with periodic boundary
 * conditions, where a is the (measure) derivative of A.  Everything is
 * computed through the antiderivative A:
 *
 *   spectrum      lambda_n = c (2 pi / L)(omega + n),  omega = A(L)/(2 pi c)
 *   eigenfunction psi_n(t) = exp(2 pi i n t / L) exp(-i (A(t) - A(L) t / L))
 *   resolvent     (i + T)^{-1} has kernel S(t,s) + K(t,s) built from
 *                 Phi(t) = (i A(t) - t)/c
 *
 * The spectrum is exact; quadrature enters only through kernel norms.
 */
class CircleOperator {
 public:
  explicit CircleOperator(MeasurePotential potential, double scale = 1.0);

  const MeasurePotential& potential() const { return potential_; }
  double length() const { return potential_.length(); }
  double scale() const { return scale_; }
  // omega of the rescaled potential: A(L) / (2 pi c)
  double omega() const;

  // all eigenvalues (lambda, n) with lambda in [lo, hi], sorted by lambda; each simple
  std::vector<std::pair<double, int>> spectrum(double lo, double hi) const;

  // psi_n(t); requires scale == 1 (general c is handled by explicit conjugation upstream)
  cplx eigenfunction(int n, double t) const;

  // S(t,s) + K(t,s), the integral kernel of (i + T)^{-1}
  cplx resolvent_kernel(double t, double s) const;

  EtaResult eta_xi() const;

 private:
  cplx phi(double t) const;  // (i A(t) - t) / c

  MeasurePotential potential_;
  double scale_;
};

// L^2([0,L]^2) norm of the resolvent kernel difference; upper bound for the
// operator-norm distance of the resolvents.  quadrature_n >= 16 panels per axis.
double resolvent_gap_distance(const CircleOperator& op1, const CircleOperator& op2,
                              int quadrature_n);

// floor(omega_1) - floor(omega_0) for the affine family between the two
// potentials; throws degeneracy_error when an endpoint omega is an integer.
int spectral_flow(const MeasurePotential& p0, const MeasurePotential& p1);

/*
 * Independent oracle: signed count of integer crossings of a sampled
 * continuous path t -> omega(t) (up-crossings +1, down-crossings -1).
 * Requires non-integer endpoints and |step| < 1/2 in omega.
 */
int crossing_count_flow(std::span<const double> omega_path);

}  // namespace etaflow

#endif
