#ifndef HELMCONTROL_SCENARIO_HPP
#define HELMCONTROL_SCENARIO_HPP

#include <string>
#include <vector>

#include "helmcontrol/geometry.hpp"
#include "helmcontrol/greens.hpp"
#include "helmcontrol/types.hpp"

namespace helm {

/// Near-field prescription on a control region.
struct Prescription {
  enum class Kind { Null, PlaneWave, File };
  Kind kind = Kind::Null;
  Vec3 direction = -Vec3::UnitX();  // plane-wave travel direction
  double wavenumber = 0.0;          // plane-wave wavenumber
  std::string file;                 // per-point values, "re,im" rows
};

struct RegionSpec {
  std::string name;
  SectorBounds bounds;
  int n_r = 1, n_theta = 1, n_phi = 1;
  Prescription prescription;
};

struct FarFieldSpec {
  Vec3 direction = Vec3::UnitX();  // free space
  double theta = 0.0;              // ocean azimuth
  double z = 0.0;                  // ocean depth
  Complex value{0.0, 0.0};
};

struct SolverSettings {
  double epsilon_rel = 1e-3;  // Morozov target delta = epsilon_rel * ||b||
  double tol_rel = 0.05;      // discrepancy match tolerance
  double near_weight = 1.0;   // row weight for near-field rows
  double far_weight = 1.0;    // row weight for far-field rows
};

struct OutputSettings {
  std::string directory = "out";
  double patch_half_width = 0.1;  // radians, far-field report patches
  int patch_n = 11;
  double power_radius = 0.05;
  int power_n_theta = 32;
  int power_n_phi = 32;
  double offset_fraction = 0.5;  // stability grid offset
  int boundary_n_lat = 13;
  int boundary_n_lon = 18;
  bool dump_system = false;
};

/// Full problem description: medium, source, controls, far-field targets,
/// solver settings, truncations, output knobs.
struct Scenario {
  std::string title;
  Medium medium;
  SourceGeometry source;
  int n_lat = 13, n_lon = 18;
  int quadrature_per_axis = 1;  // in-patch rule: 1 (centroid) or 2 (2x2 Gauss)
  std::vector<RegionSpec> regions;
  std::vector<FarFieldSpec> farfield;
  SolverSettings solver;
  ModeTruncation truncation;
  OutputSettings outputs;
};

/// Parses a scenario config (TOML subset). base_dir resolves relative file
/// prescriptions. Throws ConfigError on malformed input.
Scenario parse_scenario(const std::string& toml_text, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

/// All validation issues (empty = valid): geometry invariants, separation,
/// far-field target invariants, solver/truncation ranges.
std::vector<std::string> validate_scenario(const Scenario& scenario);

/// Builders used by the runner. Both throw on invalid scenarios.
BasisSet build_basis(const Scenario& scenario);
std::vector<ControlRegion> build_regions(const Scenario& scenario);
std::vector<FarFieldTarget> build_farfield_targets(const Scenario& scenario);

/// Fills region.prescribed from the spec's prescription.
void apply_prescription(ControlRegion& region, const Prescription& prescription);

/// Names and config text of the bundled scenario configs.
struct BundledConfig {
  std::string name;
  std::string text;
};
const std::vector<BundledConfig>& bundled_configs();
const BundledConfig* find_bundled_config(const std::string& name);

}  // namespace helm

#endif  // HELMCONTROL_SCENARIO_HPP
