#include "etaflow/interval_bvp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "etaflow/errors.hpp"

namespace etaflow {

namespace {
constexpr double kTiePos = 1e-12;
const double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};
}  // namespace

IntervalSystem::IntervalSystem(std::vector<IntervalData> intervals, Eigen::MatrixXcd transmission)
    : intervals_(std::move(intervals)), transmission_(std::move(transmission)) {
  const auto n = static_cast<Eigen::Index>(intervals_.size());
  if (n == 0) throw std::invalid_argument("IntervalSystem: need at least one interval");
  if (transmission_.rows() != n || transmission_.cols() != n)
    throw std::invalid_argument("IntervalSystem: transmission matrix size mismatch");
  const double defect =
      (transmission_.adjoint() * transmission_ - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-12)
    throw std::invalid_argument("IntervalSystem: transmission matrix not unitary (defect " +
                                std::to_string(defect) + ")");
  alpha_.reserve(intervals_.size());
  for (const auto& iv : intervals_) {
    if (!(iv.length > 0.0)) throw std::invalid_argument("IntervalSystem: lengths must be positive");
    alpha_.push_back(iv.potential.integral());
    total_length_ += iv.length;
  }
  det_t_arg_ = std::arg(transmission_.determinant());
}

cplx IntervalSystem::secular_det(cplx lambda) const {
  const auto n = transmission_.rows();
  Eigen::MatrixXcd m = -transmission_;
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = std::exp(kI * (lambda * intervals_[static_cast<std::size_t>(j)].length -
                                  alpha_[static_cast<std::size_t>(j)]));
    m.row(j) *= d;
  }
  m += Eigen::MatrixXcd::Identity(n, n);
  return m.determinant();
}

Eigen::MatrixXcd IntervalSystem::monodromy(double lambda) const {
  const auto n = transmission_.rows();
  Eigen::MatrixXcd u = transmission_;
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = std::exp(kI * (lambda * intervals_[static_cast<std::size_t>(j)].length -
                                  alpha_[static_cast<std::size_t>(j)]));
    u.row(j) *= d;
  }
  return u;
}

double IntervalSystem::counting(double lambda) const {
  // continuous branch of arg det U(lambda) minus the sum of angles in [0, 2 pi)
  double theta_sum = 0.0;
  for (double a : unitary_eig_angles(monodromy(lambda))) {
    if (a >= kTwoPi) a -= kTwoPi;  // angle convention (0, 2 pi] -> [0, 2 pi)
    theta_sum += a;
  }
  double alpha_total = 0.0;
  for (double a : alpha_) alpha_total += a;
  const double big_theta = lambda * total_length_ - alpha_total + det_t_arg_;
  return std::round((big_theta - theta_sum) / kTwoPi);
}

int IntervalSystem::nullity(double lambda) const {
  const auto n = transmission_.rows();
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) - monodromy(lambda);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  int null = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (svd.singularValues()[i] < 1e-8) ++null;
  return null;
}

std::vector<std::pair<double, int>> IntervalSystem::spectrum(double lo, double hi) const {
  std::vector<std::pair<double, int>> out;
  if (!(hi >= lo)) return out;

  const double step = std::numbers::pi / (4.0 * total_length_);
  // nudge window ends off eigenvalues so the counting function is stable there
  double a = lo - 0.5 * step;
  const double b = hi + 0.5 * step;

  // recursively split [x0, x1] carrying counts; emit roots at small widths
  struct Frame {
    double x0, x1;
    double c0, c1;
  };
  std::vector<Frame> stack;
  double ca = counting(a);
  double x = a;
  while (x < b) {
    const double y = std::min(x + step, b);
    const double cy = counting(y);
    if (cy - ca >= 0.5) stack.push_back({x, y, ca, cy});
    x = y;
    ca = cy;
  }

  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const int roots_here = static_cast<int>(std::lround(f.c1 - f.c0));
    if (roots_here <= 0) continue;
    if (f.x1 - f.x0 < std::max(1e-13, 4e-15 * std::abs(f.x0))) {
      const double root = 0.5 * (f.x0 + f.x1);
      const int mult = nullity(root);
      if (mult != roots_here)
        throw consistency_error(
            "IntervalSystem::spectrum: root refinement failed near lambda = " +
            std::to_string(root) + " (count " + std::to_string(roots_here) + ", nullity " +
            std::to_string(mult) + ", bracket [" + std::to_string(f.x0) + ", " +
            std::to_string(f.x1) + "])");
      if (root >= lo - 1e-9 && root <= hi + 1e-9) out.emplace_back(root, mult);
      continue;
    }
    const double mid = 0.5 * (f.x0 + f.x1);
    const double cm = counting(mid);
    stack.push_back({f.x0, mid, f.c0, cm});
    stack.push_back({mid, f.x1, cm, f.c1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

EtaResult IntervalSystem::eta_xi() const {
  const auto n = transmission_.rows();

  // weighted permutation structure: exactly one non-negligible entry per row/column
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> col_used(static_cast<std::size_t>(n), false);
  bool is_permutation = true;
  for (Eigen::Index j = 0; j < n && is_permutation; ++j) {
    int hit = -1;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mag = std::abs(transmission_(j, k));
      if (mag > 0.5) {
        hit = static_cast<int>(k);
      } else if (mag > 1e-12) {
        is_permutation = false;
        break;
      }
    }
    if (hit < 0 || col_used[static_cast<std::size_t>(hit)]) {
      is_permutation = false;
      break;
    }
    col_used[static_cast<std::size_t>(hit)] = true;
    perm[static_cast<std::size_t>(j)] = hit;
  }

  std::vector<double> fractions;
  if (is_permutation) {
    // one progression per cycle of the coupling permutation: the cycle of
    // row weights d_j(lambda) T_{j,perm(j)} closes up iff
    // lambda * Lambda_c = A_c - arg(prod T-weights) + 2 pi k
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Eigen::Index j0 = 0; j0 < n; ++j0) {
      if (seen[static_cast<std::size_t>(j0)]) continue;
      double cycle_alpha = 0.0;
      cplx weight{1.0, 0.0};
      int j = static_cast<int>(j0);
      while (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        cycle_alpha += alpha_[static_cast<std::size_t>(j)];
        weight *= transmission_(j, perm[static_cast<std::size_t>(j)]);
        j = perm[static_cast<std::size_t>(j)];
      }
      fractions.push_back((cycle_alpha - std::arg(weight)) / kTwoPi);
    }
    return eta_from_fractions(fractions);
  }

  // equal lengths: progressions lambda = (2 pi / l)(theta_k / 2 pi + Z) over
  // the eigenangles of the reduced unitary T* diag(e^{i alpha_k})
  const double l0 = intervals_.front().length;
  for (const auto& iv : intervals_)
    if (std::abs(iv.length - l0) > 1e-12 * std::max(1.0, l0))
      throw unsupported_structure_error(
          "IntervalSystem::eta_xi: spectrum is not a finite union of progressions "
          "(transmission is not a weighted permutation and lengths differ)");
  Eigen::MatrixXcd reduced = transmission_.adjoint();
  for (Eigen::Index k = 0; k < n; ++k)
    reduced.col(k) *= std::exp(kI * alpha_[static_cast<std::size_t>(k)]);
  for (double theta : unitary_eig_angles(reduced)) fractions.push_back(theta / kTwoPi);
  return eta_from_fractions(fractions, 1e-9);
}

IntervalSystem from_split(const MeasurePotential& p, std::vector<double> partition) {
  const double l = p.length();
  // normalize: keep interior points, sorted and unique
  std::vector<double> pts;
  for (double t : partition) {
    if (t < -kTiePos || t > l + kTiePos)
      throw std::invalid_argument("from_split: partition point outside [0, L]");
    if (t > kTiePos && t < l - kTiePos) pts.push_back(t);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) <= kTiePos; }),
            pts.end());

  for (const auto& jump : p.jumps()) {
    const bool found = std::any_of(pts.begin(), pts.end(), [&](double t) {
      return std::abs(t - jump.pos) <= kTiePos;
    });
    if (!found)
      throw std::invalid_argument("from_split: partition misses the jump at t = " +
                                  std::to_string(jump.pos));
  }

  std::vector<double> cuts{0.0};
  cuts.insert(cuts.end(), pts.begin(), pts.end());
  cuts.push_back(l);
  const auto n = static_cast<Eigen::Index>(cuts.size() - 1);

  std::vector<IntervalData> intervals;
  intervals.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double a = cuts[static_cast<std::size_t>(k)];
    const double b = cuts[static_cast<std::size_t>(k) + 1];
    intervals.push_back({b - a, p.ac_part().restrict_to(a, b)});
  }

  auto jump_at = [&](double t) {
    for (const auto& jump : p.jumps())
      if (std::abs(jump.pos - t) <= kTiePos) return jump.mag;
    return 0.0;
  };

  Eigen::MatrixXcd t_matrix = Eigen::MatrixXcd::Zero(n, n);
  t_matrix(0, n - 1) = 1.0;  // wrap u_n(L) = u_1(0)
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double c = jump_at(cuts[static_cast<std::size_t>(j) + 1]);
    t_matrix(j + 1, j) = std::exp(-kI * c);  // u_{j+1}(t_j) = e^{-i c_j} u_j(t_j)
  }
  return IntervalSystem(std::move(intervals), std::move(t_matrix));
}

int boundary_index(int n, int v_dim) {
  if (v_dim < 0 || v_dim > 2 * n) throw std::invalid_argument("boundary_index: 0 <= dim V <= 2n");
  return v_dim - n;
}

double split_equivalence_residual(const MeasurePotential& p, std::vector<double> partition,
                                  const std::function<cplx(double)>& f, int samples) {
  const double l = p.length();
  const IntervalSystem sys = from_split(p, partition);  // validates the partition

  // quadrature breakpoints: partition points, jump loci, profile breakpoints
  std::set<double> cuts{0.0, l};
  for (double t : partition)
    if (t > kTiePos && t < l - kTiePos) cuts.insert(t);
  for (const auto& jump : p.jumps()) cuts.insert(jump.pos);
  for (double b : p.ac_part().breakpoints()) cuts.insert(std::clamp(b, 0.0, l));

  auto phi = [&](double t) { return cplx{-t, p.eval_antiderivative(t)}; };
  auto integrand = [&](double s) { return std::exp(phi(s)) * f(s); };

  Quadrature quad{std::vector<double>(cuts.begin(), cuts.end()), 16,
                  std::max(1, samples / (16 * static_cast<int>(cuts.size())))};
  const cplx q_total = quad.integrate(std::function<cplx(double)>(integrand));
  const cplx c0 = q_total / (std::exp(phi(l)) - 1.0);

  // cumulative integral of e^{phi} f up to t (panel prefix + partial panel)
  const auto& [nodes, weights] = gauss_legendre(16);
  auto segment = [&](double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < nodes.size(); ++j)
      s += weights[j] * half * integrand(mid + half * nodes[j]);
    return s;
  };
  auto u_at = [&](double t, cplx q_to_t) {
    return kI * std::exp(-phi(t)) * (c0 + q_to_t);
  };

  double residual = 0.0;

  // (i) ODE residual on a uniform grid per interval, 8th-order interior FD
  static const double fd[9] = {1.0 / 280.0, -4.0 / 105.0, 1.0 / 5.0, -4.0 / 5.0, 0.0,
                               4.0 / 5.0,   -1.0 / 5.0,   4.0 / 105.0, -1.0 / 280.0};
  const std::vector<double> cut_list(cuts.begin(), cuts.end());
  cplx q_base{0.0, 0.0};
  for (std::size_t seg = 0; seg + 1 < cut_list.size(); ++seg) {
    const double a = cut_list[seg], b = cut_list[seg + 1];
    const int m = std::max(32, static_cast<int>(samples * (b - a) / l));
    const double h = (b - a) / m;
    std::vector<cplx> u(static_cast<std::size_t>(m) + 1);
    cplx q = q_base;
    double t = a;
    u[0] = u_at(a, q);  // A is right continuous, so this is the right limit
    for (int k = 1; k <= m; ++k) {
      const double tn = a + h * k;
      q += segment(t, tn);
      t = tn;
      u[static_cast<std::size_t>(k)] = u_at(tn, q);
    }
    for (int k = 4; k <= m - 4; ++k) {
      cplx du{0.0, 0.0};
      for (int j = -4; j <= 4; ++j) du += fd[j + 4] * u[static_cast<std::size_t>(k + j)];
      du /= h;
      const double tk = a + h * k;
      const cplx res = -kI * du + p.ac_part()(tk) * u[static_cast<std::size_t>(k)] +
                       kI * u[static_cast<std::size_t>(k)] - f(tk);
      residual = std::max(residual, std::abs(res));
    }
    q_base = q;
  }

  // (ii) jump conditions at interior partition points
  auto jump_at = [&](double t) {
    for (const auto& jump : p.jumps())
      if (std::abs(jump.pos - t) <= kTiePos) return jump.mag;
    return 0.0;
  };
  cplx q_run{0.0, 0.0};
  for (std::size_t seg = 0; seg + 1 < cut_list.size(); ++seg) {
    q_run += segment(cut_list[seg], cut_list[seg + 1]);
    const double tj = cut_list[seg + 1];
    if (tj >= l - kTiePos) break;
    const cplx u_minus = kI * std::exp(-cplx{-tj, p.eval_antiderivative(tj) - jump_at(tj)}) *
                         (c0 + q_run);
    const cplx u_plus = u_at(tj, q_run);
    residual = std::max(residual, std::abs(u_plus - std::exp(-kI * jump_at(tj)) * u_minus));
  }

  // (iii) periodic wrap u(L) = u(0)
  const cplx u_l = kI * std::exp(-phi(l)) * (c0 + q_total);
  const cplx u_0 = kI * c0;
  residual = std::max(residual, std::abs(u_l - u_0));

  return residual;
}

}  // namespace etaflow
