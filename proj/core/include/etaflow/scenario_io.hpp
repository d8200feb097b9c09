#ifndef ETAFLOW_SCENARIO_IO_HPP
#define ETAFLOW_SCENARIO_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "etaflow/interval_bvp.hpp"
#include "etaflow/measure_potential.hpp"
#include "etaflow/pants.hpp"
#include "etaflow/theorems.hpp"

namespace etaflow {

// ---- JSON schemas ---------------------------------------------------------
//
// potential: {"length": L,
//             "ac": {"kind": "piecewise-poly", "breakpoints": [...], "coeffs": [[...], ...]}
//                 | {"kind": "samples", "ts": [...], "values": [...]},
//             "jumps": [{"pos": p, "mag": c}, ...]}
// unitary:   {"n": n, "entries": [[re, im], ...]}          (row-major)
// system:    {"intervals": [{"length": l, "potential": <ac descriptor>}, ...],
//             "transmission": <unitary>}
// scenario:  {"id": ..., "alpha": ..., "beta": ..., "patch_radius": ...,
//             "lengths": [l1..l4], "h0": [<ac descriptor> x4],
//             "omega_outer": {"plus": {"coeffs": [...]},
//                             "minus_a": {...}, "minus_b": {...}}}
// scenario file: a single scenario, {"scenarios": [...]}, or
//             {"sweep": {"count": N, "seed": S}}

nlohmann::json potential_to_json(const MeasurePotential& p);
MeasurePotential potential_from_json(const nlohmann::json& j);

nlohmann::json unitary_to_json(const Eigen::MatrixXcd& u);
Eigen::MatrixXcd unitary_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const IntervalSystem& sys);
IntervalSystem system_from_json(const nlohmann::json& j);

nlohmann::json scenario_to_json(const PantsScenario& sc);
PantsScenario scenario_from_json(const nlohmann::json& j);

// parse a scenario file (single object, list, or sweep directive)
std::vector<PantsScenario> scenarios_from_file(const std::string& path);

/*
 * Deterministic random scenario: the stream depends only on (seed, index),
 * never on platform distributions, so sweeps are reproducible bit for bit.
 * Saddle ratios are drawn with theta_plus uniform in (0.2, 2.9) and weights
 * are resampled until every quantity the theorems floor is at distance
 * >= 0.02 from the integers.
 */
PantsScenario random_scenario(std::uint64_t seed, std::uint64_t index);

// deliberately degenerate scenario (omega_1 integral) for exercising the
// inconclusive path
PantsScenario degenerate_scenario(std::uint64_t seed);

// CSV report: scenario_id, identity, lhs, rhs, residual, status; floats at
// 17 significant digits
void write_report_csv(std::ostream& out, const std::vector<VerificationReport>& reports);
std::string report_csv(const std::vector<VerificationReport>& reports);

}  // namespace etaflow

#endif
