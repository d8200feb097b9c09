#include "etaflow/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "etaflow/circle_operator.hpp"
#include "etaflow/errors.hpp"

namespace etaflow {

namespace {

const double kPi = std::numbers::pi;
const double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegTol = 1e-9;

double frac(double x) { return x - std::floor(x); }

bool near_integer(double x, double tol = kDegTol) {
  return std::abs(x - std::round(x)) < tol;
}

// xi of an invertible circle operator with weight omega, via circle_operator
double xi_from_omega(double omega) {
  const CircleOperator op(MeasurePotential::constant_mass(kTwoPi, kTwoPi * omega));
  return op.eta_xi().xi;
}

std::vector<double> default_t_grid() {
  // geometric refinement toward the critical level plus a uniform bulk
  std::vector<double> grid;
  for (int k = 40; k >= 17; --k) grid.push_back(std::pow(2.0, -0.5 * k));
  for (int j = 1; j <= 256; ++j) grid.push_back(j / 256.0);
  return grid;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.pass; });
}

bool VerificationReport::degenerate_only() const {
  bool any_degenerate = false;
  for (const auto& c : checks) {
    if (c.degenerate) {
      any_degenerate = true;
    } else if (!c.pass) {
      return false;
    }
  }
  return any_degenerate;
}

void VerificationReport::add(std::string identity, double lhs, double rhs, double tol,
                             std::string note) {
  IdentityCheck c;
  c.identity = std::move(identity);
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = lhs - rhs;
  c.pass = std::abs(c.residual) <= tol;
  c.note = std::move(note);
  checks.push_back(std::move(c));
}

void VerificationReport::add_degenerate(std::string identity, std::string note) {
  IdentityCheck c;
  c.identity = std::move(identity);
  c.degenerate = true;
  c.note = std::move(note);
  checks.push_back(std::move(c));
}

std::pair<long, bool> aps_index(int chi, std::span<const double> h_weights) {
  const int n = static_cast<int>(h_weights.size());
  if ((chi - n) % 2 != 0)
    throw std::invalid_argument("aps_index: chi - n must be even for these surfaces");
  for (double h : h_weights) {
    if (near_integer(h))
      throw degeneracy_error("aps_index: boundary weight " + std::to_string(h) +
                             " is within 1e-9 of an integer");
  }
  long index = (chi - n) / 2;
  for (double h : h_weights) index -= static_cast<long>(std::floor(h));
  return {index, true};
}

long aps_index_pants(const PantsScenario& sc) {
  const double w1 = omega_t(sc, 1.0);
  const auto [wa, wb] = omega_t_components(sc, -1.0);
  if (near_integer(w1) || near_integer(wa) || near_integer(wb))
    throw degeneracy_error("aps_index_pants: an end weight is within 1e-9 of an integer");

  const double xi_top = xi_from_omega(w1);
  const double xi_bottom = xi_from_omega(wa) + xi_from_omega(wb);
  const double value = -0.5 - w1 + (wa + wb) - xi_top + xi_bottom;
  if (!near_integer(value))
    throw consistency_error("aps_index_pants: value " + std::to_string(value) +
                            " is not an integer to 1e-9");
  return static_cast<long>(std::llround(value));
}

SpectralFlowLimits sf_limits(const PantsScenario& sc, std::span<const double> t_grid) {
  std::vector<double> grid(t_grid.begin(), t_grid.end());
  if (grid.empty()) grid = default_t_grid();
  std::sort(grid.begin(), grid.end());
  if (grid.front() <= 0.0 || grid.back() > 1.0)
    throw std::invalid_argument("sf_limits: t grid must lie in (0, 1]");
  if (std::abs(grid.back() - 1.0) > 1e-12) grid.push_back(1.0);

  const double w1 = omega_t(sc, 1.0);
  const auto [wa, wb] = omega_t_components(sc, -1.0);
  const double w0p = sc.omega_limit_plus();
  const double w0a = sc.omega_limit_minus_a();
  const double w0b = sc.omega_limit_minus_b();
  for (double w : {w1, wa, wb, w0p, w0a, w0b}) {
    if (near_integer(w))
      throw degeneracy_error("sf_limits: an endpoint weight is within 1e-9 of an integer");
  }

  // closed form through sf-xi: SF = (omega_end + xi_end) - (omega_start + xi_start)
  auto closed_form = [](double w_start, double w_end) {
    const double value = (w_end + xi_from_omega(w_end)) - (w_start + xi_from_omega(w_start));
    if (!near_integer(value))
      throw consistency_error("sf_limits: closed form is not an integer");
    return static_cast<int>(std::llround(value));
  };
  const int plus_closed = closed_form(w0p, w1);
  const int minus_a_closed = closed_form(wa, w0a);
  const int minus_b_closed = closed_form(wb, w0b);

  // oracle: crossing counts along the sampled paths extended by their limits
  std::vector<double> path_plus{w0p};
  for (double t : grid) path_plus.push_back(omega_t(sc, t));
  const int plus_oracle = crossing_count_flow(path_plus);

  std::vector<double> path_a{wa}, path_b{wb};
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    const auto [ca, cb] = omega_t_components(sc, -*it);
    path_a.push_back(ca);
    path_b.push_back(cb);
  }
  path_a.push_back(w0a);
  path_b.push_back(w0b);
  const int minus_a_oracle = crossing_count_flow(path_a);
  const int minus_b_oracle = crossing_count_flow(path_b);

  if (plus_closed != plus_oracle || minus_a_closed != minus_a_oracle ||
      minus_b_closed != minus_b_oracle)
    throw consistency_error(
        "sf_limits: crossing-count oracle disagrees with the closed form (plus " +
        std::to_string(plus_oracle) + " vs " + std::to_string(plus_closed) + ", minus a " +
        std::to_string(minus_a_oracle) + " vs " + std::to_string(minus_a_closed) + ", minus b " +
        std::to_string(minus_b_oracle) + " vs " + std::to_string(minus_b_closed) + ")");

  SpectralFlowLimits out;
  out.sf_plus = plus_closed;
  out.sf_minus_a = minus_a_closed;
  out.sf_minus_b = minus_b_closed;
  out.sf_minus = minus_a_closed + minus_b_closed;
  return out;
}

namespace {

struct ScenarioInvariants {
  long index = 0;
  SpectralFlowLimits sf;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
};

bool scenario_degenerate(const PantsScenario& sc, std::string& why) {
  const double w1 = omega_t(sc, 1.0);
  const auto [wa, wb] = omega_t_components(sc, -1.0);
  const struct {
    const char* name;
    double value;
  } weights[] = {
      {"omega_1", w1},
      {"omega_-1^a", wa},
      {"omega_-1^b", wb},
      {"omega_0^+", sc.omega_limit_plus()},
      {"omega_0^a + theta_-/4pi", sc.omega_limit_minus_a()},
      {"omega_0^b + theta_-/4pi", sc.omega_limit_minus_b()},
  };
  for (const auto& w : weights) {
    if (near_integer(w.value)) {
      why = std::string(w.name) + " = " + std::to_string(w.value) + " is integral";
      return true;
    }
  }
  return false;
}

ScenarioInvariants assemble(const PantsScenario& sc, VerificationReport& report) {
  ScenarioInvariants inv;
  inv.index = aps_index_pants(sc);
  inv.sf = sf_limits(sc);

  // xi_+ / xi_- from the closed forms, cross-checked against the explicit
  // 4-interval transmission systems
  const double xi_plus_closed = 0.5 * (1.0 - 2.0 * frac(sc.omega_limit_plus()));
  const double xi_minus_closed = 0.5 * (1.0 - 2.0 * frac(sc.omega_limit_minus_a())) +
                                 0.5 * (1.0 - 2.0 * frac(sc.omega_limit_minus_b()));
  const double xi_plus_bvp = plus_limit_system(sc).eta_xi().xi;
  const double xi_minus_bvp = minus_limit_system(sc).eta_xi().xi;
  report.add("xi-plus-consistency", xi_plus_closed, xi_plus_bvp, 1e-10,
             "closed form vs transmission system");
  report.add("xi-minus-consistency", xi_minus_closed, xi_minus_bvp, 1e-10,
             "closed form vs transmission system");

  inv.xi_plus = xi_plus_closed;
  inv.xi_minus = xi_minus_closed;
  return inv;
}

}  // namespace

VerificationReport verify_main(const PantsScenario& sc) {
  VerificationReport report;
  report.scenario_id = sc.id();
  std::string why;
  if (scenario_degenerate(sc, why)) {
    report.add_degenerate("eq-main", why);
    return report;
  }
  const ScenarioInvariants inv = assemble(sc, report);
  const double lhs = static_cast<double>(inv.index + inv.sf.sf_plus + inv.sf.sf_minus);
  const double rhs = -(inv.xi_plus - inv.xi_minus);
  report.add("eq-main", lhs, rhs, 1e-9,
             "i_APS + SF_+ + SF_- = -(xi_+ - xi_-)");
  return report;
}

VerificationReport eta_kashi_check(const PantsScenario& sc) {
  VerificationReport report;
  report.scenario_id = sc.id();
  std::string why;
  if (scenario_degenerate(sc, why)) {
    report.add_degenerate("eta-kashi", why);
    return report;
  }

  const auto [t_plus, t_minus] = transmission_matrices(sc);
  const HermitianLagrangian gamma_plus(t_plus);
  const HermitianLagrangian gamma_minus(t_minus);
  const HermitianLagrangian lambda0 = cauchy_data_lagrangian(sc);
  const HermitianLagrangian j_lambda0 = lambda0.conjugate_j();

  const double xi_plus = plus_limit_system(sc).eta_xi().xi;
  const double xi_minus = minus_limit_system(sc).eta_xi().xi;
  report.add("eta-kashi-plus", xi_plus, tau(gamma_plus, j_lambda0), 1e-9,
             "xi(D_0^+) = tau(Gamma_+, J Lambda_0)");
  report.add("eta-kashi-minus", xi_minus, tau(gamma_minus, j_lambda0), 1e-9,
             "xi(D_0^-) = tau(Gamma_-, J Lambda_0)");

  // progression structure of the two-lagrangian spectra: the eigenvalues of
  // D_{Gamma_+, Lambda_0} form (pi/4)((theta_+/2pi - omega_0) + Z)
  const double offset_plus = 0.25 * kPi * (sc.theta_plus() / kTwoPi - sc.omega0());
  const auto spec_plus = pair_spectrum(gamma_plus, lambda0, -4.0, 4.0);
  double dev_plus = 0.0;
  for (const auto& [lambda, mult] : spec_plus) {
    const double k = std::round((lambda - offset_plus) / (0.25 * kPi));
    dev_plus = std::max(dev_plus, std::abs(lambda - (offset_plus + 0.25 * kPi * k)));
  }
  // count check: the window must hold exactly the progression's points
  const int expected_plus =
      static_cast<int>(std::floor((4.0 - offset_plus) / (0.25 * kPi))) -
      static_cast<int>(std::ceil((-4.0 - offset_plus) / (0.25 * kPi))) + 1;
  int found_plus = 0;
  for (const auto& ev : spec_plus) found_plus += ev.second;
  report.add("spec-h-plus-structure", dev_plus, 0.0, 1e-10,
             "D(Gamma_+, Lambda_0) spectrum on the (pi/4)-progression");
  report.add("spec-h-plus-count", found_plus, expected_plus, 0.1, "progression point count");

  // minus side: two progressions -(theta_-/8 + pi omega_0^{a,b}/2) + (pi/2) Z
  const auto spec_minus = pair_spectrum(gamma_minus, lambda0, -4.0, 4.0);
  const double base_a = -(sc.theta_minus() / 8.0 + 0.5 * kPi * sc.omega0_a());
  const double base_b = -(sc.theta_minus() / 8.0 + 0.5 * kPi * sc.omega0_b());
  double dev_minus = 0.0;
  for (const auto& [lambda, mult] : spec_minus) {
    const double da = std::abs(lambda - base_a - 0.5 * kPi * std::round((lambda - base_a) / (0.5 * kPi)));
    const double db = std::abs(lambda - base_b - 0.5 * kPi * std::round((lambda - base_b) / (0.5 * kPi)));
    dev_minus = std::max(dev_minus, std::min(da, db));
  }
  report.add("spec-h-minus-structure", dev_minus, 0.0, 1e-10,
             "D(Gamma_-, Lambda_0) spectrum on the two (pi/2)-progressions");

  return report;
}

VerificationReport verify_kashi(const PantsScenario& sc) {
  VerificationReport report;
  report.scenario_id = sc.id();
  std::string why;
  if (scenario_degenerate(sc, why)) {
    report.add_degenerate("th-kashi", why);
    return report;
  }
  const ScenarioInvariants inv = assemble(sc, report);

  const auto [t_plus, t_minus] = transmission_matrices(sc);
  const HermitianLagrangian gamma_plus(t_plus);
  const HermitianLagrangian gamma_minus(t_minus);
  const HermitianLagrangian j_lambda0 = cauchy_data_lagrangian(sc).conjugate_j();

  const int kw = kashiwara_index(j_lambda0, gamma_plus, gamma_minus);
  const double lhs = static_cast<double>(inv.index + inv.sf.sf_plus + inv.sf.sf_minus);
  report.add("th-kashi", lhs, static_cast<double>(-kw), 1e-9,
             "i_APS + SF_+ + SF_- = -omega(J Lambda_0, Gamma_+, Gamma_-)");
  report.add("tau-plus-minus", tau(gamma_plus, gamma_minus), 0.0, 1e-12, "tau(T_+, T_-) = 0");
  report.add("kashi-vs-xi", static_cast<double>(kw), inv.xi_plus - inv.xi_minus, 1e-9,
             "omega(J Lambda_0, Gamma_+, Gamma_-) = xi_+ - xi_-");
  return report;
}

}  // namespace etaflow
