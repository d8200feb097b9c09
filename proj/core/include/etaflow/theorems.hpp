#ifndef ETAFLOW_THEOREMS_HPP
#define ETAFLOW_THEOREMS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etaflow/pants.hpp"

namespace etaflow {

struct IdentityCheck {
  std::string identity;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool pass = false;
  bool degenerate = false;  // marked inconclusive, not counted as a failure
  std::string note;
};

struct VerificationReport {
  std::string scenario_id;
  std::vector<IdentityCheck> checks;

  bool all_pass() const;
  bool degenerate_only() const;  // every non-passing check is a flagged degeneracy
  void add(std::string identity, double lhs, double rhs, double tol, std::string note = "");
  void add_degenerate(std::string identity, std::string note);
};

/*
 * Index of the APS problem on a surface with boundary weights
 * H_i = (1/4 pi) int_{boundary_i} h ds (outer normal convention):
 *
 *   i_APS = (chi - n)/2 - sum_i floor(H_i),
 *
 * n = number of boundary components.  Throws degeneracy_error when some H_i
 * is within 1e-9 of an integer (the boundary operator would have a kernel);
 * requires chi - n even.
 */
std::pair<long, bool> aps_index(int chi, std::span<const double> h_weights);

/*
 * The pants index assembled from scenario data,
 *   i_APS = -1/2 - omega_1 + omega_{-1} - xi(D_1) + xi(D_{-1}),
 * with the xi values taken from circle operators at the ends.  The value is
 * gated to be an integer to 1e-9.
 */
long aps_index_pants(const PantsScenario& sc);

struct SpectralFlowLimits {
  int sf_plus = 0;
  int sf_minus = 0;
  int sf_minus_a = 0;
  int sf_minus_b = 0;
};

/*
 * One-sided spectral flow limits of the level family, computed two ways:
 * the closed form (omega_end + xi_end) - (omega_start + xi_start) on each
 * side, and the crossing-count oracle along the sampled omega path extended
 * by its one-sided limit.  Throws consistency_error when the routes disagree.
 * t_grid gives the |t| sample points in (0, 1]; a default grid is used when
 * empty.
 */
SpectralFlowLimits sf_limits(const PantsScenario& sc, std::span<const double> t_grid = {});

// i_APS + SF_+ + SF_- + (xi_+ - xi_-) = 0, with xi_+- cross-checked between
// the closed forms and the 4-interval transmission systems
VerificationReport verify_main(const PantsScenario& sc);

// xi(D_0^+-) = tau(Gamma_{T_+-}, J Lambda_0), plus the progression structure
// of the two-lagrangian spectra
VerificationReport eta_kashi_check(const PantsScenario& sc);

// i_APS + SF_+ + SF_- = -omega(J Lambda_0, Gamma_+, Gamma_-), tau(T_+, T_-) = 0
VerificationReport verify_kashi(const PantsScenario& sc);

}  // namespace etaflow

#endif
