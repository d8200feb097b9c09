#include "etaflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "etaflow/errors.hpp"

namespace etaflow {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute_gauss_legendre(int n) {
  // Newton iteration on Legendre polynomials, nodes symmetric about 0.
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int k = 0; k < m; ++k) {
    double z = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[k] = -z;
    x[n - 1 - k] = z;
    w[k] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - k] = w[k];
  }
  return {x, w};
}

template <typename T>
T integrate_panels(const Quadrature& q, const std::function<T(double)>& f) {
  if (q.breakpoints.size() < 2) throw std::invalid_argument("Quadrature: need at least two breakpoints");
  const auto& [nodes, weights] = gauss_legendre(q.points_per_panel);
  T total{};
  for (std::size_t i = 0; i + 1 < q.breakpoints.size(); ++i) {
    const double a = q.breakpoints[i], b = q.breakpoints[i + 1];
    if (!(b >= a)) throw std::invalid_argument("Quadrature: breakpoints not sorted");
    const int parts = std::max(1, q.min_panels);
    for (int p = 0; p < parts; ++p) {
      const double pa = a + (b - a) * p / parts;
      const double pb = a + (b - a) * (p + 1) / parts;
      const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
      for (std::size_t j = 0; j < nodes.size(); ++j)
        total += weights[j] * half * f(mid + half * nodes[j]);
    }
  }
  return total;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b, double whole,
                    double tol, int depth) {
  const auto& [nodes, weights] = gauss_legendre(16);
  const double m = 0.5 * (a + b);
  auto gl = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) s += weights[j] * half * f(mid + half * nodes[j]);
    return s;
  };
  const double left = gl(a, m), right = gl(m, b);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth >= 48) return left + right;
  return adaptive_rec(f, a, m, left, 0.5 * tol, depth + 1) +
         adaptive_rec(f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double Quadrature::integrate(const std::function<double(double)>& f) const {
  return integrate_panels<double>(*this, f);
}

cplx Quadrature::integrate(const std::function<cplx(double)>& f) const {
  return integrate_panels<cplx>(*this, f);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const auto& [nodes, weights] = gauss_legendre(16);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double whole = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    whole += weights[j] * half * f(mid + half * nodes[j]);
  return adaptive_rec(f, a, b, whole, tol, 0);
}

double hurwitz_zeta(double s, double a) {
  if (s == 1.0) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta: requires a > 0");

  constexpr int N = 20;
  // B_{2j} / (2j)! for j = 1..6
  constexpr double bern[6] = {1.0 / 12.0,       -1.0 / 720.0,      1.0 / 30240.0,
                              -1.0 / 1209600.0, 1.0 / 47900160.0,  -691.0 / 1307674368000.0};

  double sum = 0.0;
  for (int k = 0; k < N; ++k) sum += std::pow(k + a, -s);
  const double q = N + a;
  sum += std::pow(q, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(q, -s);

  // Correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * q^{-s-2j+1}
  double poch = s;  // rising factorial (s)_{2j-1}, updated incrementally
  double qpow = std::pow(q, -s - 1.0);
  for (int j = 1; j <= 6; ++j) {
    sum += bern[j - 1] * poch * qpow;
    poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    qpow /= q * q;
  }
  return sum;
}

std::vector<cplx> unitary_eigs(const Eigen::MatrixXcd& u) {
  const auto n = u.rows();
  if (n != u.cols()) throw std::invalid_argument("unitary_eigs: matrix not square");
  if (n > 16) throw std::invalid_argument("unitary_eigs: dimension exceeds 16");
  const double defect = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw std::invalid_argument("unitary_eigs: input is not unitary");

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw consistency_error("unitary_eigs: eigensolver failed");

  std::vector<cplx> eigs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx z = solver.eigenvalues()[i];
    eigs[static_cast<std::size_t>(i)] = z / std::abs(z);  // snap to the unit circle
  }
  auto angle = [](const cplx& z) {
    double a = std::arg(z);
    if (a <= 0.0) a += 2.0 * std::numbers::pi;
    return a;
  };
  std::sort(eigs.begin(), eigs.end(), [&](const cplx& x, const cplx& y) { return angle(x) < angle(y); });
  return eigs;
}

std::vector<double> unitary_eig_angles(const Eigen::MatrixXcd& u) {
  const auto eigs = unitary_eigs(u);
  std::vector<double> angles(eigs.size());
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    double a = std::arg(eigs[i]);
    if (a <= 0.0) a += 2.0 * std::numbers::pi;
    angles[i] = a;
  }
  return angles;
}

double principal_angle(double theta) {
  return theta <= std::numbers::pi ? theta : theta - 2.0 * std::numbers::pi;
}

cplx principal_log_trace(const Eigen::MatrixXcd& u) {
  cplx total{0.0, 0.0};
  for (double theta : unitary_eig_angles(u)) {
    // eigenvalues were snapped to |z| = 1, so log|z| = 0
    if (theta < 2.0 * std::numbers::pi) total += cplx{0.0, principal_angle(theta)};
  }
  return total;
}

std::vector<double> bracketed_roots(const std::function<double(double)>& f, double lo, double hi,
                                    double step) {
  if (!(step > 0.0) || !(hi > lo)) throw std::invalid_argument("bracketed_roots: bad window/step");
  std::vector<double> roots;

  auto refine = [&](double a, double b, double fa, double fb) {
    for (int it = 0; it < 200; ++it) {
      if (b - a < 1e-12) return 0.5 * (a + b);
      // secant proposal, fall back to bisection when it leaves the bracket
      double m = (std::abs(fb - fa) > 0.0) ? (a - fa * (b - a) / (fb - fa)) : 0.5 * (a + b);
      if (!(m > a && m < b)) m = 0.5 * (a + b);
      // keep progress: never accept a point glued to an endpoint
      const double floor_step = 0.25 * (b - a) * 1e-3;
      m = std::clamp(m, a + floor_step, b - floor_step);
      const double fm = f(m);
      if (fm == 0.0) return m;
      if ((fa < 0.0) != (fm < 0.0)) {
        b = m;
        fb = fm;
      } else {
        a = m;
        fa = fm;
      }
    }
    throw consistency_error("bracketed_roots: no convergence in 200 iterations in [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]");
  };

  double a = lo;
  double fa = f(a);
  while (a < hi) {
    const double b = std::min(a + step, hi);
    const double fb = f(b);
    if (fa == 0.0) {
      if (roots.empty() || std::abs(roots.back() - a) > 1e-10) roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0)) {
      roots.push_back(refine(a, b, fa, fb));
    }
    a = b;
    fa = fb;
  }
  if (fa == 0.0 && (roots.empty() || std::abs(roots.back() - hi) > 1e-10)) roots.push_back(hi);
  return roots;
}

}  // namespace etaflow
