#include "etaflow/measure_potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "etaflow/numerics.hpp"

namespace etaflow {

namespace {
constexpr double kTiePos = 1e-12;  // jump positions closer than this merge in sums
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> c(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<double> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::compose_affine(double alpha, double beta) const {
  // Horner in the polynomial ring: result = c_n; result = result*(alpha x + beta) + c_k
  std::vector<double> r{coeffs_.back()};
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    std::vector<double> next(r.size() + 1, 0.0);
    for (std::size_t k = 0; k < r.size(); ++k) {
      next[k + 1] += r[k] * alpha;
      next[k] += r[k] * beta;
    }
    next[0] += *it;
    r = std::move(next);
  }
  return Polynomial(std::move(r));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Polynomial& Polynomial::operator*=(double c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

PiecewisePoly::PiecewisePoly() : breaks_{0.0, 1.0}, pieces_{Polynomial()} { rebuild_cumulative(); }

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints, std::vector<Polynomial> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
    throw std::invalid_argument("PiecewisePoly: breakpoint/piece count mismatch");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw std::invalid_argument("PiecewisePoly: breakpoints not strictly increasing");
  rebuild_cumulative();
}

PiecewisePoly PiecewisePoly::constant(double value, double x0, double x1) {
  return PiecewisePoly({x0, x1}, {Polynomial({value})});
}

PiecewisePoly PiecewisePoly::from_samples(std::span<const double> ts, std::span<const double> values) {
  if (ts.size() != values.size() || ts.size() < 2)
    throw std::invalid_argument("PiecewisePoly::from_samples: need matching lists of >= 2 samples");
  std::vector<double> breaks(ts.begin(), ts.end());
  std::vector<Polynomial> pieces;
  pieces.reserve(ts.size() - 1);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double slope = (values[i + 1] - values[i]) / (ts[i + 1] - ts[i]);
    pieces.push_back(Polynomial({values[i], slope}));
  }
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

void PiecewisePoly::rebuild_cumulative() {
  cum_.assign(breaks_.size(), 0.0);
  for (std::size_t j = 0; j + 1 < breaks_.size(); ++j) {
    const Polynomial anti = pieces_[j].antiderivative();
    cum_[j + 1] = cum_[j] + anti(breaks_[j + 1] - breaks_[j]);
  }
}

std::size_t PiecewisePoly::piece_index(double x) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  if (it == breaks_.begin()) return 0;
  std::size_t j = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return std::min(j, pieces_.size() - 1);
}

double PiecewisePoly::operator()(double x) const {
  const std::size_t j = piece_index(x);
  return pieces_[j](x - breaks_[j]);
}

double PiecewisePoly::antiderivative(double x) const {
  const std::size_t j = piece_index(x);
  return cum_[j] + pieces_[j].antiderivative()(x - breaks_[j]);
}

double PiecewisePoly::abs_integral() const {
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < breaks_.size(); ++j) {
    const auto& p = pieces_[j];
    total += integrate_adaptive([&](double x) { return std::abs(p(x - breaks_[j])); },
                                breaks_[j], breaks_[j + 1], 1e-12);
  }
  return total;
}

PiecewisePoly PiecewisePoly::restrict_to(double a, double b) const {
  if (!(a < b) || a < xmin() - kTiePos || b > xmax() + kTiePos)
    throw std::invalid_argument("PiecewisePoly::restrict_to: bad subinterval");
  std::vector<double> nb{0.0};
  std::vector<Polynomial> np;
  const std::size_t ja = piece_index(std::min(std::max(a, xmin()), xmax()));
  for (std::size_t j = ja; j < pieces_.size(); ++j) {
    const double lo = std::max(a, breaks_[j]);
    const double hi = std::min(b, breaks_[j + 1]);
    if (!(hi > lo + kTiePos)) {
      if (breaks_[j] >= b) break;
      continue;
    }
    // local variable of the restricted piece: v = x - lo; original local u = x - breaks_[j]
    np.push_back(pieces_[j].compose_affine(1.0, lo - breaks_[j]));
    nb.push_back(nb.back() + (hi - lo));
    if (hi >= b - kTiePos) break;
  }
  nb.back() = b - a;  // kill accumulated round-off at the right end
  return PiecewisePoly(std::move(nb), std::move(np));
}

PiecewisePoly PiecewisePoly::shifted(double delta) const {
  std::vector<double> nb(breaks_);
  for (auto& x : nb) x += delta;
  return PiecewisePoly(std::move(nb), pieces_);
}

PiecewisePoly PiecewisePoly::scaled(double c) const {
  std::vector<Polynomial> np(pieces_);
  for (auto& p : np) p *= c;
  return PiecewisePoly(breaks_, std::move(np));
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
  if (std::abs(a.xmin() - b.xmin()) > kTiePos || std::abs(a.xmax() - b.xmax()) > kTiePos)
    throw std::invalid_argument("PiecewisePoly: sum requires a common domain");
  std::vector<double> nb;
  nb.reserve(a.breaks_.size() + b.breaks_.size());
  std::merge(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(),
             std::back_inserter(nb));
  nb.erase(std::unique(nb.begin(), nb.end(),
                       [](double x, double y) { return std::abs(x - y) <= kTiePos; }),
           nb.end());
  std::vector<Polynomial> np;
  np.reserve(nb.size() - 1);
  for (std::size_t j = 0; j + 1 < nb.size(); ++j) {
    const double lo = nb[j];
    const std::size_t ja = a.piece_index(0.5 * (lo + nb[j + 1]));
    const std::size_t jb = b.piece_index(0.5 * (lo + nb[j + 1]));
    Polynomial p = a.pieces_[ja].compose_affine(1.0, lo - a.breaks_[ja]);
    p += b.pieces_[jb].compose_affine(1.0, lo - b.breaks_[jb]);
    np.push_back(std::move(p));
  }
  return PiecewisePoly(std::move(nb), std::move(np));
}

PiecewisePoly PiecewisePoly::concat(const PiecewisePoly& a, const PiecewisePoly& b) {
  std::vector<double> nb(a.breaks_);
  const double offset = a.xmax() - b.xmin();
  for (std::size_t i = 1; i < b.breaks_.size(); ++i) nb.push_back(b.breaks_[i] + offset);
  std::vector<Polynomial> np(a.pieces_);
  np.insert(np.end(), b.pieces_.begin(), b.pieces_.end());
  return PiecewisePoly(std::move(nb), std::move(np));
}

MeasurePotential::MeasurePotential(double length, PiecewisePoly ac_part, std::vector<Jump> jumps)
    : length_(length), ac_(std::move(ac_part)), jumps_(std::move(jumps)) {
  if (!(length_ > 0.0)) throw std::invalid_argument("MeasurePotential: length must be positive");
  if (std::abs(ac_.xmin()) > kTiePos || std::abs(ac_.xmax() - length_) > kTiePos)
    throw std::invalid_argument("MeasurePotential: ac profile must live on [0, L]");
  for (std::size_t j = 0; j < jumps_.size(); ++j) {
    if (!(jumps_[j].pos > 0.0 && jumps_[j].pos < length_))
      throw std::invalid_argument("MeasurePotential: jump positions must be interior to (0, L)");
    if (j > 0 && !(jumps_[j].pos > jumps_[j - 1].pos))
      throw std::invalid_argument("MeasurePotential: jump positions must be strictly increasing");
  }
}

MeasurePotential MeasurePotential::zero(double length) {
  return MeasurePotential(length, PiecewisePoly::zero(0.0, length), {});
}

MeasurePotential MeasurePotential::constant_mass(double length, double mass) {
  return MeasurePotential(length, PiecewisePoly::constant(mass / length, 0.0, length), {});
}

double MeasurePotential::eval_antiderivative(double t) const {
  if (t < -kTiePos || t > length_ + kTiePos)
    throw std::domain_error("eval_antiderivative: t outside [0, L]");
  t = std::clamp(t, 0.0, length_);
  double v = ac_.antiderivative(t);
  for (const auto& jump : jumps_) {
    if (jump.pos <= t) v += jump.mag;  // H(0) = 1: right continuity
  }
  return v;
}

double MeasurePotential::omega() const { return total_mass() / (2.0 * std::numbers::pi); }

double MeasurePotential::total_variation() const {
  double tv = ac_.abs_integral();
  for (const auto& jump : jumps_) tv += std::abs(jump.mag);
  return tv;
}

std::pair<PiecewisePoly, std::vector<Jump>> MeasurePotential::decompose() const {
  return {ac_, jumps_};
}

MeasurePotential MeasurePotential::mollify(double eps) const {
  if (jumps_.empty()) return *this;
  if (!(eps > 0.0)) throw std::invalid_argument("mollify: eps must be positive");
  double min_gap = std::min(jumps_.front().pos, length_ - jumps_.back().pos);
  for (std::size_t j = 0; j + 1 < jumps_.size(); ++j)
    min_gap = std::min(min_gap, jumps_[j + 1].pos - jumps_[j].pos);
  if (!(eps < 0.5 * min_gap))
    throw std::invalid_argument("mollify: eps exceeds half the minimal jump gap");

  // bump density (315/256) (1 - u^2)^4 / eps on u = (x - p)/eps, unit mass
  const Polynomial shape({315.0 / 256.0, 0.0, -4.0 * 315.0 / 256.0, 0.0, 6.0 * 315.0 / 256.0, 0.0,
                          -4.0 * 315.0 / 256.0, 0.0, 315.0 / 256.0});
  PiecewisePoly density = ac_;
  for (const auto& jump : jumps_) {
    // local variable on [p - eps, p + eps] is v = x - (p - eps); u = (v - eps)/eps
    Polynomial bump = shape.compose_affine(1.0 / eps, -1.0);
    bump *= jump.mag / eps;
    PiecewisePoly bump_profile({0.0, jump.pos - eps, jump.pos + eps, length_},
                               {Polynomial(), bump, Polynomial()});
    density = density + bump_profile;
  }
  return MeasurePotential(length_, std::move(density), {});
}

MeasurePotential linear_combination(double alpha, const MeasurePotential& p, double beta,
                                    const MeasurePotential& q) {
  if (std::abs(p.length_ - q.length_) > kTiePos)
    throw std::invalid_argument("linear_combination: lengths differ");
  PiecewisePoly density = p.ac_.scaled(alpha) + q.ac_.scaled(beta);
  std::vector<Jump> jumps;
  std::size_t i = 0, j = 0;
  while (i < p.jumps_.size() || j < q.jumps_.size()) {
    if (j == q.jumps_.size() ||
        (i < p.jumps_.size() && p.jumps_[i].pos < q.jumps_[j].pos - kTiePos)) {
      jumps.push_back({p.jumps_[i].pos, alpha * p.jumps_[i].mag});
      ++i;
    } else if (i == p.jumps_.size() || q.jumps_[j].pos < p.jumps_[i].pos - kTiePos) {
      jumps.push_back({q.jumps_[j].pos, beta * q.jumps_[j].mag});
      ++j;
    } else {
      jumps.push_back({p.jumps_[i].pos, alpha * p.jumps_[i].mag + beta * q.jumps_[j].mag});
      ++i;
      ++j;
    }
  }
  std::erase_if(jumps, [](const Jump& c) { return c.mag == 0.0; });
  return MeasurePotential(p.length_, std::move(density), std::move(jumps));
}

double very_weak_distance(const MeasurePotential& p1, const MeasurePotential& p2,
                          std::span<const double> grid) {
  auto collides = [](const MeasurePotential& p, double t) {
    for (const auto& jump : p.jumps())
      if (std::abs(jump.pos - t) <= kTiePos) return true;
    return false;
  };
  double dist = 0.0;
  for (double t : grid) {
    if (t < 0.0 || t > std::min(p1.length(), p2.length()))
      throw std::domain_error("very_weak_distance: grid point outside [0, L]");
    if (collides(p1, t) || collides(p2, t))
      throw std::invalid_argument("very_weak_distance: grid point collides with a jump");
    dist = std::max(dist, std::abs(p1.eval_antiderivative(t) - p2.eval_antiderivative(t)));
  }
  return dist;
}

}  // namespace etaflow
