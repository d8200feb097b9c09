#include "etaflow/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace etaflow {

using nlohmann::json;

namespace {

const double kPi = std::numbers::pi;

json profile_to_json(const PiecewisePoly& prof) {
  json coeffs = json::array();
  for (const auto& piece : prof.pieces()) coeffs.push_back(piece.coeffs());
  return json{{"kind", "piecewise-poly"}, {"breakpoints", prof.breakpoints()}, {"coeffs", coeffs}};
}

PiecewisePoly profile_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "piecewise-poly") {
    const auto breaks = j.at("breakpoints").get<std::vector<double>>();
    std::vector<Polynomial> pieces;
    for (const auto& c : j.at("coeffs")) pieces.emplace_back(c.get<std::vector<double>>());
    return PiecewisePoly(breaks, std::move(pieces));
  }
  if (kind == "samples") {
    const auto ts = j.at("ts").get<std::vector<double>>();
    const auto values = j.at("values").get<std::vector<double>>();
    return PiecewisePoly::from_samples(ts, values);
  }
  throw std::invalid_argument("profile_from_json: unknown kind '" + kind + "'");
}

// splitmix64: platform-independent stream of doubles in [0, 1)
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

bool far_from_integers(double x, double margin) {
  return std::abs(x - std::round(x)) >= margin;
}

}  // namespace

json potential_to_json(const MeasurePotential& p) {
  json jumps = json::array();
  for (const auto& jump : p.jumps()) jumps.push_back({{"pos", jump.pos}, {"mag", jump.mag}});
  return json{{"length", p.length()}, {"ac", profile_to_json(p.ac_part())}, {"jumps", jumps}};
}

MeasurePotential potential_from_json(const json& j) {
  const double length = j.at("length").get<double>();
  PiecewisePoly ac = j.contains("ac") ? profile_from_json(j.at("ac"))
                                      : PiecewisePoly::zero(0.0, length);
  std::vector<Jump> jumps;
  if (j.contains("jumps"))
    for (const auto& jj : j.at("jumps"))
      jumps.push_back({jj.at("pos").get<double>(), jj.at("mag").get<double>()});
  return MeasurePotential(length, std::move(ac), std::move(jumps));
}

json unitary_to_json(const Eigen::MatrixXcd& u) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    for (Eigen::Index c = 0; c < u.cols(); ++c)
      entries.push_back({u(r, c).real(), u(r, c).imag()});
  return json{{"n", u.rows()}, {"entries", entries}};
}

Eigen::MatrixXcd unitary_from_json(const json& j) {
  const auto n = j.at("n").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != n * n)
    throw std::invalid_argument("unitary_from_json: expected n*n row-major complex pairs");
  Eigen::MatrixXcd u(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c, ++k)
      u(r, c) = cplx{entries[static_cast<std::size_t>(k)][0].get<double>(),
                     entries[static_cast<std::size_t>(k)][1].get<double>()};
  return u;
}

json system_to_json(const IntervalSystem& sys) {
  json intervals = json::array();
  for (const auto& iv : sys.intervals())
    intervals.push_back({{"length", iv.length}, {"potential", profile_to_json(iv.potential)}});
  return json{{"intervals", intervals}, {"transmission", unitary_to_json(sys.transmission())}};
}

IntervalSystem system_from_json(const json& j) {
  std::vector<IntervalData> intervals;
  for (const auto& ji : j.at("intervals")) {
    const double length = ji.at("length").get<double>();
    PiecewisePoly prof = ji.contains("potential") ? profile_from_json(ji.at("potential"))
                                                  : PiecewisePoly::zero(0.0, length);
    intervals.push_back({length, std::move(prof)});
  }
  return IntervalSystem(std::move(intervals), unitary_from_json(j.at("transmission")));
}

json scenario_to_json(const PantsScenario& sc) {
  json h0 = json::array();
  for (const auto& prof : sc.h0_profiles()) h0.push_back(profile_to_json(prof));
  return json{{"id", sc.id()},
              {"alpha", sc.alpha()},
              {"beta", sc.beta()},
              {"patch_radius", sc.patch_radius()},
              {"lengths", sc.lengths()},
              {"h0", h0},
              {"omega_outer",
               {{"plus", {{"coeffs", sc.outer_plus().coeffs()}}},
                {"minus_a", {{"coeffs", sc.outer_minus_a().coeffs()}}},
                {"minus_b", {{"coeffs", sc.outer_minus_b().coeffs()}}}}}};
}

PantsScenario scenario_from_json(const json& j) {
  std::array<double, 4> lengths{};
  const auto jl = j.at("lengths");
  if (jl.size() != 4) throw std::invalid_argument("scenario_from_json: need 4 segment lengths");
  for (int k = 0; k < 4; ++k) lengths[static_cast<std::size_t>(k)] = jl[static_cast<std::size_t>(k)].get<double>();

  std::array<PiecewisePoly, 4> h0;
  const auto jh = j.at("h0");
  if (jh.size() != 4) throw std::invalid_argument("scenario_from_json: need 4 h0 profiles");
  for (int k = 0; k < 4; ++k) h0[static_cast<std::size_t>(k)] = profile_from_json(jh[static_cast<std::size_t>(k)]);

  const auto& jo = j.at("omega_outer");
  auto poly = [](const json& node) {
    return Polynomial(node.at("coeffs").get<std::vector<double>>());
  };
  return PantsScenario(j.value("id", std::string("scenario")), j.at("alpha").get<double>(),
                       j.at("beta").get<double>(), j.at("patch_radius").get<double>(), lengths,
                       std::move(h0), poly(jo.at("plus")), poly(jo.at("minus_a")),
                       poly(jo.at("minus_b")));
}

std::vector<PantsScenario> scenarios_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j;
  in >> j;

  std::vector<PantsScenario> out;
  if (j.contains("sweep")) {
    const auto& sw = j.at("sweep");
    const auto count = sw.at("count").get<std::uint64_t>();
    const auto seed = sw.value("seed", std::uint64_t{0});
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(random_scenario(seed, k));
  } else if (j.contains("scenarios")) {
    for (const auto& js : j.at("scenarios")) out.push_back(scenario_from_json(js));
  } else {
    out.push_back(scenario_from_json(j));
  }
  return out;
}

PantsScenario random_scenario(std::uint64_t seed, std::uint64_t index) {
  // decorrelate (seed, index) into one stream
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL + 0x2545f4914f6cdd1dULL);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double theta_plus = rng.uniform(0.2, 2.9);
    const double m = std::pow(std::tan(0.5 * theta_plus), 2);
    const double beta = rng.uniform(0.6, 1.8);
    const double alpha = m * beta;
    const double radius = std::sqrt(1.5 / std::min(alpha, beta));

    std::array<double, 4> lengths{};
    for (auto& l : lengths) l = rng.uniform(0.6, 1.7);

    std::array<PiecewisePoly, 4> h0;
    for (int k = 0; k < 4; ++k) {
      const double l = lengths[static_cast<std::size_t>(k)];
      const double target = 4.0 * kPi * rng.uniform(-0.8, 0.8);  // omega_k
      const double c1 = rng.uniform(-0.3, 0.3);
      const double c2 = rng.uniform(-0.3, 0.3);
      // shape 1 + c1 (u/l) + c2 (u/l)^2 has integral in [0.4 l, 1.6 l]
      const Polynomial shape({1.0, c1 / l, c2 / (l * l)});
      const double mass = shape.antiderivative()(l);
      Polynomial piece = shape;
      piece *= target / mass;
      h0[static_cast<std::size_t>(k)] = PiecewisePoly({0.0, l}, {piece});
    }

    auto omega_of = [&](const std::array<PiecewisePoly, 4>& profs, int k) {
      return profs[static_cast<std::size_t>(k)].integral() / (4.0 * kPi);
    };
    const double w0a = omega_of(h0, 0) + omega_of(h0, 3);
    const double w0b = omega_of(h0, 1) + omega_of(h0, 2);

    const Polynomial outer_plus({w0a + w0b, rng.uniform(-2.5, 2.5), rng.uniform(-1.0, 1.0)});
    const Polynomial outer_a({w0a, rng.uniform(-2.5, 2.5), rng.uniform(-1.0, 1.0)});
    const Polynomial outer_b({w0b, rng.uniform(-2.5, 2.5), rng.uniform(-1.0, 1.0)});

    PantsScenario sc("scn-" + std::to_string(seed) + "-" + std::to_string(index), alpha, beta,
                     radius, lengths, h0, outer_plus, outer_a, outer_b);

    // nondegeneracy margins for everything the theorems floor
    const double w1 = omega_t(sc, 1.0);
    const auto [wm1a, wm1b] = omega_t_components(sc, -1.0);
    const bool good = far_from_integers(w1, 0.02) && far_from_integers(wm1a, 0.02) &&
                      far_from_integers(wm1b, 0.02) &&
                      far_from_integers(sc.omega_limit_plus(), 0.02) &&
                      far_from_integers(sc.omega_limit_minus_a(), 0.02) &&
                      far_from_integers(sc.omega_limit_minus_b(), 0.02);
    if (good) return sc;
  }
  throw std::runtime_error("random_scenario: could not reach a nondegenerate draw");
}

PantsScenario degenerate_scenario(std::uint64_t seed) {
  PantsScenario base = random_scenario(seed, 0);
  // tilt the outer weight so omega_1 lands on an integer; the constant term
  // stays put, so omega_outer(0) remains consistent with h0
  const double w1 = omega_t(base, 1.0);
  std::vector<double> coeffs = base.outer_plus().coeffs();
  coeffs[1] -= w1 - std::round(w1);
  return PantsScenario(base.id() + "-degenerate", base.alpha(), base.beta(), base.patch_radius(),
                       base.lengths(), base.h0_profiles(), Polynomial(coeffs),
                       base.outer_minus_a(), base.outer_minus_b());
}

void write_report_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
  out << "scenario_id,identity,lhs,rhs,residual,status\n";
  char buf[64];
  auto fmt = [&](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      const char* status = c.degenerate ? "inconclusive" : (c.pass ? "pass" : "fail");
      out << rep.scenario_id << ',' << c.identity << ',' << fmt(c.lhs) << ',' << fmt(c.rhs)
          << ',' << fmt(c.residual) << ',' << status << '\n';
    }
  }
}

std::string report_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  write_report_csv(out, reports);
  return out.str();
}

}  // namespace etaflow
