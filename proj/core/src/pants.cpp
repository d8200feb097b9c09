#include "etaflow/pants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "etaflow/errors.hpp"
#include "etaflow/numerics.hpp"

namespace etaflow {

namespace {
const double kPi = std::numbers::pi;
const double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};
}  // namespace

PantsScenario::PantsScenario(std::string id, double alpha, double beta, double patch_radius,
                             std::array<double, 4> lengths, std::array<PiecewisePoly, 4> h0,
                             Polynomial outer_plus, Polynomial outer_minus_a,
                             Polynomial outer_minus_b)
    : id_(std::move(id)),
      alpha_(alpha),
      beta_(beta),
      patch_radius_(patch_radius),
      lengths_(lengths),
      h0_(std::move(h0)),
      outer_plus_(std::move(outer_plus)),
      outer_minus_a_(std::move(outer_minus_a)),
      outer_minus_b_(std::move(outer_minus_b)) {
  if (!(alpha_ > 0.0) || !(beta_ > 0.0))
    throw std::invalid_argument("PantsScenario: alpha, beta must be positive");
  if (!(patch_radius_ > 0.0)) throw std::invalid_argument("PantsScenario: patch radius positive");
  for (int k = 0; k < 4; ++k) {
    if (!(lengths_[static_cast<std::size_t>(k)] > 0.0))
      throw std::invalid_argument("PantsScenario: segment lengths must be positive");
    const auto& prof = h0_[static_cast<std::size_t>(k)];
    if (std::abs(prof.xmin()) > 1e-12 ||
        std::abs(prof.xmax() - lengths_[static_cast<std::size_t>(k)]) > 1e-12)
      throw std::invalid_argument("PantsScenario: h0 profile domain must match segment length");
  }
  // the model region must cover the whole level range [-1, 1]
  if (!(t_max_plus() > 1.0) || !(t_max_minus() > 1.0))
    throw std::invalid_argument(
        "PantsScenario: patch radius too small, quadratic model must hold for |t| <= 1");
  // the outer weights must limit to the h0-derived weights at t = 0
  if (std::abs(outer_plus_(0.0) - omega0()) > 1e-9 ||
      std::abs(outer_minus_a_(0.0) - omega0_a()) > 1e-9 ||
      std::abs(outer_minus_b_(0.0) - omega0_b()) > 1e-9)
    throw std::invalid_argument(
        "PantsScenario: omega_outer(0) must equal the h0 segment weights "
        "(the cut level is flat inside the patch)");
}

double PantsScenario::theta_plus() const { return 2.0 * std::atan(std::sqrt(alpha_ / beta_)); }
double PantsScenario::theta_minus() const { return kPi - theta_plus(); }

double PantsScenario::total_length() const {
  return lengths_[0] + lengths_[1] + lengths_[2] + lengths_[3];
}

double PantsScenario::omega_seg(int k) const {
  return h0_[static_cast<std::size_t>(k)].integral() / (4.0 * kPi);
}

double PantsScenario::omega0_a() const { return omega_seg(0) + omega_seg(3); }
double PantsScenario::omega0_b() const { return omega_seg(1) + omega_seg(2); }
double PantsScenario::omega0() const { return omega0_a() + omega0_b(); }

double PantsScenario::omega_limit_plus() const { return omega0() - theta_plus() / kTwoPi; }
double PantsScenario::omega_limit_minus_a() const {
  return omega0_a() + theta_minus() / (4.0 * kPi);
}
double PantsScenario::omega_limit_minus_b() const {
  return omega0_b() + theta_minus() / (4.0 * kPi);
}
double PantsScenario::omega_limit_minus() const {
  return omega_limit_minus_a() + omega_limit_minus_b();
}

namespace {

// integral over (-d, d) of the branch curvature density
//   m zeta / ((zeta + m x^2)^{1/2} (zeta + m x^2 + m^2 x^2)),
// integrated in the angle variable x = sqrt(zeta/m) tan(phi) where the
// integrand becomes the smooth bounded sqrt(m) cos(phi) / (1 + m sin^2(phi))
double branch_turning(double m, double zeta, double d) {
  const double phi_d = std::atan(d * std::sqrt(m / zeta));
  auto density = [&](double phi) {
    const double s = std::sin(phi);
    return std::sqrt(m) * std::cos(phi) / (1.0 + m * s * s);
  };
  return integrate_adaptive(density, -phi_d, phi_d, 1e-13);
}

}  // namespace

double patch_turning_arc(const PantsScenario& sc, double t) {
  if (t == 0.0) throw std::invalid_argument("patch_turning: t must be nonzero");
  const double r2 = sc.patch_radius() * sc.patch_radius();
  if (t > 0.0) {
    // branch y = -(zeta + m x^2)^{1/2}, zeta = t/beta, m = alpha/beta;
    // h_t ds = -m zeta dx / ((zeta + m x^2)^{1/2} (zeta + m x^2 + m^2 x^2))
    const double zeta = t / sc.beta();
    const double m = sc.alpha() / sc.beta();
    if (zeta >= r2) throw model_region_error("patch_turning: level curve leaves the patch");
    const double d = std::sqrt((r2 - zeta) / (1.0 + m));
    return -branch_turning(m, zeta, d);
  }
  // t < 0: branch x = (zeta' + m' y^2)^{1/2} with zeta' = -t/alpha, m' = beta/alpha;
  // cooriented by grad f the sign flips, each arc turns by +theta_minus in the limit
  const double zeta = -t / sc.alpha();
  const double m = sc.beta() / sc.alpha();
  if (zeta >= r2) throw model_region_error("patch_turning: level curve leaves the patch");
  const double d = std::sqrt((r2 - zeta) / (1.0 + m));
  return branch_turning(m, zeta, d);
}

double patch_turning(const PantsScenario& sc, double t) { return 2.0 * patch_turning_arc(sc, t); }

double omega_t(const PantsScenario& sc, double t) {
  if (t == 0.0)
    throw std::invalid_argument("omega_t: t = 0 is singular, use the one-sided limits");
  if (std::abs(t) > 1.0) throw std::domain_error("omega_t: t outside [-1, 1]");
  if (t > 0.0) return sc.outer_plus()(t) + patch_turning(sc, t) / (4.0 * kPi);
  const auto [wa, wb] = omega_t_components(sc, t);
  return wa + wb;
}

std::pair<double, double> omega_t_components(const PantsScenario& sc, double t) {
  if (!(t < 0.0)) throw std::invalid_argument("omega_t_components: defined for t < 0");
  if (t < -1.0) throw std::domain_error("omega_t_components: t outside [-1, 1]");
  const double arc = patch_turning_arc(sc, t) / (4.0 * kPi);
  return {sc.outer_minus_a()(t) + arc, sc.outer_minus_b()(t) + arc};
}

std::pair<MeasurePotential, std::vector<double>> limit_potential_plus(const PantsScenario& sc) {
  const auto& l = sc.lengths();
  PiecewisePoly density = sc.h0_profiles()[0];
  for (int k = 1; k < 4; ++k)
    density = PiecewisePoly::concat(density, sc.h0_profiles()[static_cast<std::size_t>(k)]);
  density = density.scaled(0.5);  // the operator potential is h0 / 2

  const double t1 = l[0];
  const double t2 = l[0] + l[1];
  const double t3 = l[0] + l[1] + l[2];
  const double jump = -0.5 * sc.theta_plus();
  MeasurePotential p(sc.total_length(), std::move(density), {{t1, jump}, {t3, jump}});
  return {std::move(p), {t1, t2, t3}};
}

std::array<std::pair<MeasurePotential, std::vector<double>>, 2> limit_potential_minus(
    const PantsScenario& sc) {
  const auto& l = sc.lengths();
  const double jump = 0.5 * sc.theta_minus();  // domain phase e^{-i theta_minus / 2}

  // component a: I1 then I4, p0 passage at arclength l1
  PiecewisePoly da =
      PiecewisePoly::concat(sc.h0_profiles()[0], sc.h0_profiles()[3]).scaled(0.5);
  MeasurePotential pa(l[0] + l[3], std::move(da), {{l[0], jump}});

  // component b: I3 then I2 (starting at bbar), p0 passage at arclength l3
  PiecewisePoly db =
      PiecewisePoly::concat(sc.h0_profiles()[2], sc.h0_profiles()[1]).scaled(0.5);
  MeasurePotential pb(l[2] + l[1], std::move(db), {{l[2], jump}});

  return {{{std::move(pa), {l[0]}}, {std::move(pb), {l[2]}}}};
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> transmission_matrices(const PantsScenario& sc) {
  const cplx phase_plus = std::exp(kI * (0.5 * sc.theta_plus()));
  const cplx phase_minus = std::exp(-kI * (0.5 * sc.theta_minus()));

  Eigen::MatrixXcd t_plus = Eigen::MatrixXcd::Zero(4, 4);
  t_plus(0, 3) = 1.0;
  t_plus(1, 0) = phase_plus;
  t_plus(2, 1) = 1.0;
  t_plus(3, 2) = phase_plus;

  Eigen::MatrixXcd t_minus = Eigen::MatrixXcd::Zero(4, 4);
  t_minus(0, 3) = 1.0;
  t_minus(1, 2) = phase_minus;
  t_minus(2, 1) = 1.0;
  t_minus(3, 0) = phase_minus;

  return {std::move(t_plus), std::move(t_minus)};
}

namespace {
IntervalSystem limit_system(const PantsScenario& sc, const Eigen::MatrixXcd& t_matrix) {
  std::vector<IntervalData> intervals;
  intervals.reserve(4);
  for (int k = 0; k < 4; ++k)
    intervals.push_back({sc.lengths()[static_cast<std::size_t>(k)],
                         sc.h0_profiles()[static_cast<std::size_t>(k)].scaled(0.5)});
  return IntervalSystem(std::move(intervals), t_matrix);
}
}  // namespace

IntervalSystem plus_limit_system(const PantsScenario& sc) {
  return limit_system(sc, transmission_matrices(sc).first);
}

IntervalSystem minus_limit_system(const PantsScenario& sc) {
  return limit_system(sc, transmission_matrices(sc).second);
}

HermitianLagrangian cauchy_data_lagrangian(const PantsScenario& sc) {
  Eigen::MatrixXcd t0 = Eigen::MatrixXcd::Zero(4, 4);
  for (int k = 0; k < 4; ++k)
    t0(k, k) = std::exp(kI * (kTwoPi * sc.omega_seg(k)));
  return HermitianLagrangian(std::move(t0));
}

}  // namespace etaflow
