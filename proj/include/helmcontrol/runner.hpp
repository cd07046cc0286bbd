#ifndef HELMCONTROL_RUNNER_HPP
#define HELMCONTROL_RUNNER_HPP

#include <string>
#include <utility>
#include <vector>

#include "helmcontrol/propagator.hpp"
#include "helmcontrol/regsolve.hpp"
#include "helmcontrol/scenario.hpp"
#include "helmcontrol/synthesis.hpp"

namespace helm {

inline constexpr const char* kVersion = "0.1.0";

struct RegionOutcome {
  ControlRegion on_grid;  // carries the prescribed values
  ControlRegion offset;
  CVector generated_on;
  CVector generated_off;
  RegionErrorMetrics metrics_on;
  RegionErrorMetrics metrics_off;
  bool offset_prescribed_known = true;  // false for file prescriptions
};

struct FarOutcome {
  FarFieldTarget target;
  Complex generated{0.0, 0.0};
};

/// Everything a scenario run produces, in memory.
struct ScenarioResult {
  BasisSet basis;
  PropagatorSystem system;
  DensitySolution solution;
  double delta = 0.0;  // Morozov discrepancy target
  std::vector<RegionOutcome> regions;
  std::vector<FarOutcome> far;
  BoundaryInput boundary;
  PowerReport power;
  ErrorReport report_on;
  ErrorReport report_off;
  ConditionReport condition;
  std::vector<std::string> warnings;
};

/// assemble -> morozov_search -> forward synthesis, no files written.
ScenarioResult run_scenario_compute(const Scenario& scenario, int threads = 1);

struct RunManifest {
  std::string config_hash;
  std::string version;
  std::vector<std::pair<std::string, double>> stage_seconds;
  std::vector<std::string> files;  // relative to the output directory
};

/// Full pipeline: compute plus all artifact files under
/// scenario.outputs.directory (geometry dumps, density, diagnostics, field
/// CSVs on both grids, far-field patches, boundary input, power and error
/// reports, manifest).
RunManifest run_scenario(const Scenario& scenario, const std::string& config_text,
                         int threads = 1);

}  // namespace helm

#endif  // HELMCONTROL_RUNNER_HPP
