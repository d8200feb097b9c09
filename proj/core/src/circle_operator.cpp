#include "etaflow/circle_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "etaflow/errors.hpp"

namespace etaflow {

namespace {
constexpr double kIntegerTol = 1e-12;
const double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

EtaResult eta_from_fractions(const std::vector<double>& fractions, double snap_tol) {
  EtaResult r;
  r.rhos.reserve(fractions.size());
  for (double f : fractions) {
    double rho = f - std::floor(f);
    if (rho < snap_tol || rho > 1.0 - snap_tol) rho = 0.0;
    r.rhos.push_back(rho);
    if (rho == 0.0) {
      r.kernel_dim += 1;
    } else {
      r.eta0 += 1.0 - 2.0 * rho;
    }
  }
  r.xi = 0.5 * (r.kernel_dim + r.eta0);
  return r;
}

CircleOperator::CircleOperator(MeasurePotential potential, double scale)
    : potential_(std::move(potential)), scale_(scale) {
  if (!(scale_ > 0.0)) throw std::invalid_argument("CircleOperator: scale must be positive");
}

double CircleOperator::omega() const { return potential_.total_mass() / (kTwoPi * scale_); }

std::vector<std::pair<double, int>> CircleOperator::spectrum(double lo, double hi) const {
  std::vector<std::pair<double, int>> out;
  if (!(hi >= lo)) return out;
  const double ratio = scale_ * kTwoPi / length();
  const double w = omega();
  const int nmin = static_cast<int>(std::ceil(lo / ratio - w - 1.0));
  const int nmax = static_cast<int>(std::floor(hi / ratio - w + 1.0));
  for (int n = nmin; n <= nmax; ++n) {
    const double lambda = ratio * (w + n);
    if (lambda >= lo && lambda <= hi) out.emplace_back(lambda, n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

cplx CircleOperator::eigenfunction(int n, double t) const {
  if (std::abs(scale_ - 1.0) > kIntegerTol)
    throw std::invalid_argument("eigenfunction: defined for scale 1 (use the rescaling isometry)");
  const double l = length();
  const double a_t = potential_.eval_antiderivative(t);
  const double a_l = potential_.total_mass();
  const double phase = kTwoPi * n * t / l - (a_t - a_l * t / l);
  return std::polar(1.0, phase);
}

cplx CircleOperator::phi(double t) const {
  return cplx{-t, potential_.eval_antiderivative(t)} / scale_;
}

cplx CircleOperator::resolvent_kernel(double t, double s) const {
  const cplx i{0.0, 1.0};
  const cplx diff = phi(t) - phi(s);
  const cplx s_part = (i / scale_) * std::exp(-diff) / (std::exp(phi(length())) - 1.0);
  const cplx k_part = (t >= s) ? (i / scale_) * std::exp(-diff) : cplx{0.0, 0.0};
  return s_part + k_part;
}

EtaResult CircleOperator::eta_xi() const { return eta_from_fractions({omega()}); }

double resolvent_gap_distance(const CircleOperator& op1, const CircleOperator& op2,
                              int quadrature_n) {
  if (quadrature_n < 16) throw std::invalid_argument("resolvent_gap_distance: quadrature_n >= 16");
  const double l = op1.length();
  if (std::abs(l - op2.length()) > kIntegerTol)
    throw std::invalid_argument("resolvent_gap_distance: operators live on different circles");

  // axis grid: uniform panels refined by every jump locus of either potential
  std::set<double> cuts{0.0, l};
  for (int k = 1; k < quadrature_n; ++k) cuts.insert(l * k / quadrature_n);
  for (const auto& jump : op1.potential().jumps()) cuts.insert(jump.pos);
  for (const auto& jump : op2.potential().jumps()) cuts.insert(jump.pos);
  const std::vector<double> axis(cuts.begin(), cuts.end());

  const auto& [nodes, weights] = gauss_legendre(6);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
    const double tm = 0.5 * (axis[i] + axis[i + 1]), th = 0.5 * (axis[i + 1] - axis[i]);
    for (std::size_t j = 0; j + 1 < axis.size(); ++j) {
      const double sm = 0.5 * (axis[j] + axis[j + 1]), sh = 0.5 * (axis[j + 1] - axis[j]);
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        const double t = tm + th * nodes[a];
        for (std::size_t b = 0; b < nodes.size(); ++b) {
          const double s = sm + sh * nodes[b];
          const double d = std::abs(op1.resolvent_kernel(t, s) - op2.resolvent_kernel(t, s));
          sum += weights[a] * weights[b] * th * sh * d * d;
        }
      }
    }
  }
  return std::sqrt(sum);
}

int spectral_flow(const MeasurePotential& p0, const MeasurePotential& p1) {
  const double w0 = p0.omega();
  const double w1 = p1.omega();
  for (double w : {w0, w1}) {
    if (std::abs(w - std::round(w)) < kIntegerTol)
      throw degeneracy_error("spectral_flow: endpoint not invertible (omega is an integer)");
  }
  return static_cast<int>(std::floor(w1)) - static_cast<int>(std::floor(w0));
}

int crossing_count_flow(std::span<const double> omega_path) {
  if (omega_path.size() < 2) throw std::invalid_argument("crossing_count_flow: need >= 2 samples");
  for (double w : {omega_path.front(), omega_path.back()}) {
    if (std::abs(w - std::round(w)) < kIntegerTol)
      throw degeneracy_error("crossing_count_flow: endpoint omega is an integer");
  }
  int flow = 0;
  for (std::size_t i = 0; i + 1 < omega_path.size(); ++i) {
    const double a = omega_path[i], b = omega_path[i + 1];
    if (std::abs(b - a) >= 0.5)
      throw std::invalid_argument("crossing_count_flow: step too coarse (|d omega| >= 1/2)");
    // at most one integer can sit between consecutive samples
    const int cross = static_cast<int>(std::floor(b)) - static_cast<int>(std::floor(a));
    flow += cross;
  }
  return flow;
}

}  // namespace etaflow
