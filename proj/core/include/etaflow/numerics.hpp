#ifndef ETAFLOW_NUMERICS_HPP
#define ETAFLOW_NUMERICS_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace etaflow {

using cplx = std::complex<double>;

/*
 * Panel-based Gauss-Legendre quadrature.  Panels never straddle declared
 * breakpoints, so integrands that are smooth between breakpoints (kernels
 * split at jump loci, densities with kinks) are integrated at full order.
 */
struct Quadrature {
  std::vector<double> breakpoints;  // sorted, includes both interval ends
  int points_per_panel = 16;
  int min_panels = 1;  // uniform refinement of each breakpoint cell

  double integrate(const std::function<double(double)>& f) const;
  cplx integrate(const std::function<cplx(double)>& f) const;
};

// Nodes/weights for n-point Gauss-Legendre on [-1, 1].
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

// Adaptive Gauss-Legendre on [a, b] to absolute tolerance tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12);

/*
 * Hurwitz zeta zeta(s, a) = sum_{k>=0} (k+a)^{-s} by Euler-Maclaurin with
 * N = 20 direct terms and Bernoulli corrections through B_12.  Valid by
 * analytic continuation for s <= 0; accuracy ~1e-14 for s in [-1, 4].
 * At the origin it reproduces zeta(0, a) = 1/2 - a.
 */
double hurwitz_zeta(double s, double a);

/*
 * Eigenvalues of a unitary matrix, snapped to the unit circle and sorted by
 * angle with the convention arg in (0, 2*pi] (so the eigenvalue 1 carries
 * angle 2*pi).  Throws std::invalid_argument for non-unitary input or n > 16.
 */
std::vector<cplx> unitary_eigs(const Eigen::MatrixXcd& u);

// Angles of unitary_eigs(u) in (0, 2*pi], ascending.
std::vector<double> unitary_eig_angles(const Eigen::MatrixXcd& u);

// Signed principal angle of a unit-circle angle theta in (0, 2*pi]:
// theta for theta <= pi, theta - 2*pi otherwise.  log(-1) = i*pi.
double principal_angle(double theta);

/*
 * tr log U over the eigenvalues of a unitary U with the branch that sends
 * exp(i*theta), theta in (0, pi], to i*theta and theta in (pi, 2*pi) to
 * i*(theta - 2*pi).  In particular log(-1) = i*pi, log(1) = 0.
 */
cplx principal_log_trace(const Eigen::MatrixXcd& u);

/*
 * All sign-change roots of a continuous f on [lo, hi], scanned with the given
 * step and refined by safeguarded bisection/secant to ~1e-12.  The caller
 * guarantees at most one sign change per step.
 */
std::vector<double> bracketed_roots(const std::function<double(double)>& f, double lo,
                                    double hi, double step);

}  // namespace etaflow

#endif
