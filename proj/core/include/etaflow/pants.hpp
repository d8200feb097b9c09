#ifndef ETAFLOW_PANTS_HPP
#define ETAFLOW_PANTS_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "etaflow/interval_bvp.hpp"
#include "etaflow/lagrangian.hpp"
#include "etaflow/measure_potential.hpp"

namespace etaflow {

/*
 * An elementary 2d cobordism scenario: a single saddle whose neighborhood
 * carries the flat quadratic model
 *
 *   g = dx^2 + dy^2,   f = -alpha x^2 + beta y^2,
 *
 * inside a disk of radius patch_radius, plus data describing the rest of the
 * surface only through what the index formulas consume: the four arc lengths
 * of the cut critical level, a mean-curvature density h0 per arc, and the
 * outer (off-patch) contribution to omega_t = (1/4 pi) int h_t ds as
 * polynomials in the level t (split into the two components for t < 0).
 *
 * The level curves inside the patch are hyperbola branches; their asymptote
 * angles are theta_plus = 2 atan(sqrt(alpha/beta)) above the saddle and
 * theta_minus = pi - theta_plus below.  Segment order around the t > 0
 * circle is I1 (abar -> p0), I2 (p0 -> bbar), I3 (bbar -> p0), I4 (p0 -> abar);
 * component a of the cut level is I1 u I4, component b is I2 u I3.
 */
class PantsScenario {
 public:
  PantsScenario(std::string id, double alpha, double beta, double patch_radius,
                std::array<double, 4> lengths, std::array<PiecewisePoly, 4> h0,
                Polynomial outer_plus, Polynomial outer_minus_a, Polynomial outer_minus_b);

  const std::string& id() const { return id_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double patch_radius() const { return patch_radius_; }
  const std::array<double, 4>& lengths() const { return lengths_; }
  const std::array<PiecewisePoly, 4>& h0_profiles() const { return h0_; }
  const Polynomial& outer_plus() const { return outer_plus_; }
  const Polynomial& outer_minus_a() const { return outer_minus_a_; }
  const Polynomial& outer_minus_b() const { return outer_minus_b_; }

  double theta_plus() const;   // 2 atan(sqrt(alpha/beta))
  double theta_minus() const;  // pi - theta_plus

  double total_length() const;                     // L0
  double omega_seg(int k) const;                   // omega_k = (1/4pi) int_{I_k} h0
  double omega0_a() const;                         // omega_1 + omega_4
  double omega0_b() const;                         // omega_2 + omega_3
  double omega0() const;                           // omega0_a + omega0_b
  double omega_limit_plus() const;                 // omega0 - theta_plus / 2 pi
  double omega_limit_minus_a() const;              // omega0_a + theta_minus / 4 pi
  double omega_limit_minus_b() const;
  double omega_limit_minus() const;                // sum of the two

  // largest |t| for which the level curve stays inside the quadratic patch
  double t_max_plus() const { return beta_ * patch_radius_ * patch_radius_; }
  double t_max_minus() const { return alpha_ * patch_radius_ * patch_radius_; }

 private:
  std::string id_;
  double alpha_, beta_, patch_radius_;
  std::array<double, 4> lengths_;
  std::array<PiecewisePoly, 4> h0_;
  Polynomial outer_plus_, outer_minus_a_, outer_minus_b_;
};

/*
 * Turning integral of one model arc of C_t inside the patch: the closed-form
 * curvature density of the hyperbola branch integrated adaptively.  Tends to
 * -theta_plus per arc as t -> 0+ and to +theta_minus per arc as t -> 0-.
 * Throws model_region_error when |t| exceeds the patch bound.
 */
double patch_turning_arc(const PantsScenario& sc, double t);

// both arcs: 2 * patch_turning_arc (the two arcs are congruent)
double patch_turning(const PantsScenario& sc, double t);

// omega_t = outer(t) + patch_turning(t) / 4 pi for t in [-1,1] \ {0}
double omega_t(const PantsScenario& sc, double t);

// the two component weights (a, b) for t < 0
std::pair<double, double> omega_t_components(const PantsScenario& sc, double t);

/*
 * Limit potential on [0, L0] for the plus side: density h0/2 along the four
 * segments and jumps -theta_plus/2 at the two p0 passages t1 and t3.  The
 * returned partition {t1, t2, t3} feeds from_split, whose transmission
 * matrix is exactly T_plus.
 */
std::pair<MeasurePotential, std::vector<double>> limit_potential_plus(const PantsScenario& sc);

/*
 * Minus-side limit potentials on the two component circles: component a on
 * [0, l1 + l4] (segments I1 then I4) and component b on [0, l3 + l2]
 * (segments I3 then I2), each with a single interior jump +theta_minus/2 at
 * the p0 passage, so the domain phases are e^{-i theta_minus / 2} as in
 * T_minus.  Returns the potentials with their one-point partitions.
 */
std::array<std::pair<MeasurePotential, std::vector<double>>, 2> limit_potential_minus(
    const PantsScenario& sc);

// the 4x4 transmission matrices of the two limit operators
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> transmission_matrices(const PantsScenario& sc);

// 4-interval realizations of the limit operators (h0/2 densities, T_plus / T_minus)
IntervalSystem plus_limit_system(const PantsScenario& sc);
IntervalSystem minus_limit_system(const PantsScenario& sc);

/*
 * Cauchy data lagrangian of the cut operator D0 = -i d/ds + h0/2 on the four
 * segments: the graph of diag(e^{2 pi i omega_1}, ..., e^{2 pi i omega_4}).
 */
HermitianLagrangian cauchy_data_lagrangian(const PantsScenario& sc);

}  // namespace etaflow

#endif
