// etaflow: spectra, eta invariants, spectral flow and index-identity
// verification for Dirac operators with measure potentials.
//
// Exit codes: 0 ok, 2 input error, 3 identity failure, 4 all failures are
// degeneracy-flagged.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "etaflow/circle_operator.hpp"
#include "etaflow/errors.hpp"
#include "etaflow/interval_bvp.hpp"
#include "etaflow/lagrangian.hpp"
#include "etaflow/scenario_io.hpp"
#include "etaflow/theorems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFailure = 3;
constexpr int kExitDegenerate = 4;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write file: " + out_path);
  out << text;
}

struct GlobalOpts {
  std::string out;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int jobs = 1;
};

int run_spectrum(const GlobalOpts& g, const std::string& kind, const std::string& potential_path,
                 const std::string& system_path, double lo, double hi, double scale) {
  std::string csv = "n,lambda\n";
  if (kind == "circle") {
    const auto p = etaflow::potential_from_json(load_json(potential_path));
    const etaflow::CircleOperator op(p, scale);
    for (const auto& [lambda, n] : op.spectrum(lo, hi))
      csv += std::to_string(n) + "," + fmt(lambda) + "\n";
  } else if (kind == "bvp") {
    const auto sys = etaflow::system_from_json(load_json(system_path));
    int row = 0;
    for (const auto& [lambda, mult] : sys.spectrum(lo, hi))
      for (int k = 0; k < mult; ++k) csv += std::to_string(row++) + "," + fmt(lambda) + "\n";
  } else {
    throw std::runtime_error("spectrum: --kind must be circle or bvp");
  }
  emit(g.out, csv);
  return kExitOk;
}

int run_eta(const GlobalOpts& g, const std::string& kind, const std::string& potential_path,
            const std::string& system_path, double scale) {
  etaflow::EtaResult r;
  if (kind == "circle") {
    const auto p = etaflow::potential_from_json(load_json(potential_path));
    r = etaflow::CircleOperator(p, scale).eta_xi();
  } else if (kind == "bvp") {
    r = etaflow::system_from_json(load_json(system_path)).eta_xi();
  } else {
    throw std::runtime_error("eta: --kind must be circle or bvp");
  }
  std::string text = "kernel_dim,eta0,xi\n" + std::to_string(r.kernel_dim) + "," + fmt(r.eta0) +
                     "," + fmt(r.xi) + "\n";
  emit(g.out, text);
  return kExitOk;
}

int run_flow(const GlobalOpts& g, const std::string& from_path, const std::string& to_path) {
  const auto p0 = etaflow::potential_from_json(load_json(from_path));
  const auto p1 = etaflow::potential_from_json(load_json(to_path));
  const int sf = etaflow::spectral_flow(p0, p1);
  // eq. sf-xi cross-check: SF = omega_1 - omega_0 + xi_1 - xi_0
  const double via_xi = p1.omega() - p0.omega() +
                        etaflow::CircleOperator(p1).eta_xi().xi -
                        etaflow::CircleOperator(p0).eta_xi().xi;
  emit(g.out, "sf,sf_xi_residual\n" + std::to_string(sf) + "," + fmt(sf - via_xi) + "\n");
  return kExitOk;
}

int run_kashiwara(const GlobalOpts& g, const std::string& l0_path, const std::string& l1_path,
                  const std::string& l2_path) {
  const etaflow::HermitianLagrangian l0(etaflow::unitary_from_json(load_json(l0_path)));
  const etaflow::HermitianLagrangian l1(etaflow::unitary_from_json(load_json(l1_path)));
  const etaflow::HermitianLagrangian l2(etaflow::unitary_from_json(load_json(l2_path)));
  std::string text = "quantity,value\n";
  text += "tau(L1,L0)," + fmt(etaflow::tau(l1, l0)) + "\n";
  text += "tau(L2,L1)," + fmt(etaflow::tau(l2, l1)) + "\n";
  text += "tau(L0,L2)," + fmt(etaflow::tau(l0, l2)) + "\n";
  text += "omega," + std::to_string(etaflow::kashiwara_index(l0, l1, l2)) + "\n";
  emit(g.out, text);
  return kExitOk;
}

int verify_scenarios(const GlobalOpts& g, std::vector<etaflow::PantsScenario> scenarios) {
  auto run_one = [&](const etaflow::PantsScenario& sc) {
    std::vector<etaflow::VerificationReport> reports;
    reports.push_back(etaflow::verify_main(sc));
    reports.push_back(etaflow::eta_kashi_check(sc));
    reports.push_back(etaflow::verify_kashi(sc));
    return reports;
  };

  std::vector<std::vector<etaflow::VerificationReport>> results(scenarios.size());
  const int jobs = std::max(1, g.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < scenarios.size(); ++i) results[i] = run_one(scenarios[i]);
  } else {
    std::vector<std::future<void>> tasks;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < jobs; ++w) {
      tasks.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next.fetch_add(1); i < scenarios.size(); i = next.fetch_add(1))
          results[i] = run_one(scenarios[i]);
      }));
    }
    for (auto& t : tasks) t.get();
  }

  std::vector<etaflow::VerificationReport> flat;
  for (auto& batch : results)
    for (auto& rep : batch) flat.push_back(std::move(rep));

  emit(g.out, etaflow::report_csv(flat));

  bool any_fail = false, any_hard_fail = false;
  for (const auto& rep : flat) {
    if (!rep.all_pass()) {
      any_fail = true;
      if (!rep.degenerate_only()) any_hard_fail = true;
    }
  }
  if (!any_fail) return kExitOk;
  return any_hard_fail ? kExitFailure : kExitDegenerate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral machinery for Dirac operators with measure potentials"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--out", g.out, "write output to this path instead of stdout");
  app.add_option("--tol", g.tol, "residual tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for random sweeps")->capture_default_str();
  app.add_option("--jobs", g.jobs, "concurrent scenario verifications")->capture_default_str();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues in a window (CSV rows n,lambda)");
  std::string kind = "circle", potential_path, system_path;
  std::vector<double> window{-10.0, 10.0};
  double scale = 1.0;
  spectrum->add_option("--kind", kind, "circle | bvp");
  spectrum->add_option("--potential", potential_path, "potential JSON (circle)");
  spectrum->add_option("--system", system_path, "interval system JSON (bvp)");
  spectrum->add_option("--window", window, "window [lo hi]")->expected(2);
  spectrum->add_option("--scale", scale, "rescaling factor c of the circle operator");

  // eta
  auto* eta = app.add_subcommand("eta", "eta invariant / reduced eta");
  eta->add_option("--kind", kind, "circle | bvp");
  eta->add_option("--potential", potential_path, "potential JSON (circle)");
  eta->add_option("--system", system_path, "interval system JSON (bvp)");
  eta->add_option("--scale", scale, "rescaling factor c");

  // flow
  auto* flow = app.add_subcommand("flow", "spectral flow between two potentials");
  std::string from_path, to_path;
  flow->add_option("--from", from_path, "start potential JSON")->required();
  flow->add_option("--to", to_path, "end potential JSON")->required();

  // kashiwara
  auto* kash = app.add_subcommand("kashiwara", "tau invariants and the triple index");
  std::string l0_path, l1_path, l2_path;
  kash->add_option("--l0", l0_path, "graph unitary JSON")->required();
  kash->add_option("--l1", l1_path, "graph unitary JSON")->required();
  kash->add_option("--l2", l2_path, "graph unitary JSON")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run the index identities on scenarios");
  std::string scenario_path;
  verify->add_option("--scenario", scenario_path, "scenario file JSON")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "verify a randomized scenario sweep");
  std::uint64_t count = 10;
  sweep->add_option("--count", count, "number of scenarios")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed())
      return run_spectrum(g, kind, potential_path, system_path, window[0], window[1], scale);
    if (eta->parsed()) return run_eta(g, kind, potential_path, system_path, scale);
    if (flow->parsed()) return run_flow(g, from_path, to_path);
    if (kash->parsed()) return run_kashiwara(g, l0_path, l1_path, l2_path);
    if (verify->parsed()) return verify_scenarios(g, etaflow::scenarios_from_file(scenario_path));
    if (sweep->parsed()) {
      std::vector<etaflow::PantsScenario> scenarios;
      for (std::uint64_t k = 0; k < count; ++k)
        scenarios.push_back(etaflow::random_scenario(g.seed, k));
      return verify_scenarios(g, std::move(scenarios));
    }
  } catch (const etaflow::consistency_error& e) {
    std::cerr << "identity failure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
