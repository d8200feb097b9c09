#ifndef ETAFLOW_ETA_RESULT_HPP
#define ETAFLOW_ETA_RESULT_HPP

#include <stdexcept>
#include <vector>

namespace etaflow {

/*
 * Reduced eta data of an operator whose spectrum is a finite union of
 * arithmetic progressions r_c (rho_c + Z).  Per progression with fraction
 * rho in (0, 1) the eta contribution is 1 - 2 rho; rho = 0 contributes a
 * kernel line instead.  xi = (dim ker + eta(0)) / 2.
 *
 * Circle operators produce a single progression, so rho() is well defined;
 * transmission systems may carry several (one per coupling cycle).
 */
struct EtaResult {
  int kernel_dim = 0;
  double eta0 = 0.0;
  double xi = 0.0;
  std::vector<double> rhos;  // progression fractions in [0, 1)

  double rho() const {
    if (rhos.size() != 1)
      throw std::logic_error("EtaResult::rho: not a single-progression spectrum");
    return rhos.front();
  }
};

// Assemble an EtaResult from progression fractions (values snapped to 0
// within snap_tol count as kernel lines).
EtaResult eta_from_fractions(const std::vector<double>& fractions, double snap_tol = 1e-12);

}  // namespace etaflow

#endif
