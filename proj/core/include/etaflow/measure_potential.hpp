#ifndef ETAFLOW_MEASURE_POTENTIAL_HPP
#define ETAFLOW_MEASURE_POTENTIAL_HPP

#include <span>
#include <utility>
#include <vector>

namespace etaflow {

/*
 * Real polynomial in one variable, coefficients in ascending order.
 */
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double x) const;
  Polynomial antiderivative() const;  // constant term 0
  Polynomial derivative() const;
  // p(alpha * x + beta)
  Polynomial compose_affine(double alpha, double beta) const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double c);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<double> coeffs_;
};

/*
 * Piecewise-polynomial density on [x0, xm].  Each piece is a polynomial in
 * the local variable u = x - (left breakpoint of the piece).  Antiderivatives
 * are exact (cumulative per-piece integration), so potentials built from
 * these profiles satisfy mass identities to round-off.
 */
class PiecewisePoly {
 public:
  PiecewisePoly();  // zero density on [0, 1]
  PiecewisePoly(std::vector<double> breakpoints, std::vector<Polynomial> pieces);

  static PiecewisePoly constant(double value, double x0, double x1);
  static PiecewisePoly zero(double x0, double x1) { return constant(0.0, x0, x1); }
  // piecewise-linear interpolant of samples (ts ascending)
  static PiecewisePoly from_samples(std::span<const double> ts, std::span<const double> values);

  double xmin() const { return breaks_.front(); }
  double xmax() const { return breaks_.back(); }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }

  double operator()(double x) const;      // right-piece convention at breakpoints
  double antiderivative(double x) const;  // integral from xmin
  double integral() const { return antiderivative(xmax()); }
  double integral(double a, double b) const { return antiderivative(b) - antiderivative(a); }
  double abs_integral() const;  // integral of |density|

  // restriction to [a, b], re-anchored to [0, b - a]
  PiecewisePoly restrict_to(double a, double b) const;
  // shift the domain by delta (x -> x + delta)
  PiecewisePoly shifted(double delta) const;
  PiecewisePoly scaled(double c) const;
  // sum on the common domain (domains must agree)
  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
  // concatenate profiles end to end
  static PiecewisePoly concat(const PiecewisePoly& a, const PiecewisePoly& b);

 private:
  void rebuild_cumulative();
  std::size_t piece_index(double x) const;

  std::vector<double> breaks_;
  std::vector<Polynomial> pieces_;
  std::vector<double> cum_;  // cum_[j] = integral over [x0, breaks_[j]]
};

struct Jump {
  double pos;
  double mag;
};

/*
 * An admissible potential of the nice class on [0, L]: a piecewise-smooth
 * density plus finitely many interior Heaviside jumps.  The antiderivative
 *
 *   A(t) = int_0^t a(s) ds + sum_j c_j H(t - p_j),   H right-continuous,
 *
 * is the object everything downstream consumes (resolvent kernels, spectra,
 * eta invariants all depend on A, not on a pointwise).
 */
class MeasurePotential {
 public:
  MeasurePotential(double length, PiecewisePoly ac_part, std::vector<Jump> jumps);
  static MeasurePotential zero(double length);
  static MeasurePotential constant_mass(double length, double mass);

  double length() const { return length_; }
  const PiecewisePoly& ac_part() const { return ac_; }
  const std::vector<Jump>& jumps() const { return jumps_; }

  // A(t) with the right-continuous convention; throws std::domain_error outside [0, L]
  double eval_antiderivative(double t) const;
  double total_mass() const { return eval_antiderivative(length_); }
  double omega() const;  // A(L) / (2*pi)
  double total_variation() const;

  // Lebesgue-style split: Lipschitz part and jump list (reconstruction is exact)
  std::pair<PiecewisePoly, std::vector<Jump>> decompose() const;

  /*
   * Replace each jump c * delta_p by a polynomial bump of exactly mass c
   * supported in (p - eps, p + eps); the result is jump free and converges
   * very weakly to *this as eps -> 0.  Requires eps below half the minimal
   * gap between jump positions and to the boundary.
   */
  MeasurePotential mollify(double eps) const;

  friend MeasurePotential linear_combination(double alpha, const MeasurePotential& p,
                                             double beta, const MeasurePotential& q);

 private:
  double length_;
  PiecewisePoly ac_;
  std::vector<Jump> jumps_;
};

// max over the grid of |A1 - A2|; grid points must avoid both jump sets
double very_weak_distance(const MeasurePotential& p1, const MeasurePotential& p2,
                          std::span<const double> grid);

}  // namespace etaflow

#endif
