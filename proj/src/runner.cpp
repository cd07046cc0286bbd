#include "helmcontrol/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "helmcontrol/io.hpp"
#include "json.hpp"

namespace helm {

namespace {

using Clock = std::chrono::steady_clock;
using OrderedJson = nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

OrderedJson complex_json(const Complex& v) {
  return OrderedJson{{"re", v.real()}, {"im", v.imag()}};
}

OrderedJson metrics_json(const RegionErrorMetrics& m) {
  OrderedJson j;
  j["max_abs_field"] = m.max_abs_field;
  j["l2_error"] = m.l2_error;
  if (m.has_rel) j["max_rel_error"] = m.max_rel_error;
  return j;
}

void dump_json(const OrderedJson& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

ScenarioResult run_scenario_compute(const Scenario& scenario, int threads) {
  // Parameter errors surface as std::invalid_argument, geometry conflicts as
  // GeometryViolation (the builders and kernels throw the right types).
  scenario.medium.validate();
  scenario.source.validate();
  if (!(scenario.solver.epsilon_rel > 0.0))
    throw std::invalid_argument("solver.epsilon_rel must be > 0");
  if (!(scenario.solver.tol_rel > 0.0))
    throw std::invalid_argument("solver.tol_rel must be > 0");
  if (!(scenario.outputs.offset_fraction > 0.0 && scenario.outputs.offset_fraction <= 0.5))
    throw std::invalid_argument("outputs.offset_fraction must be in (0, 0.5]");

  ScenarioResult res;
  res.basis = build_basis(scenario);
  const auto regions = build_regions(scenario);
  const auto targets = build_farfield_targets(scenario);

  AssemblyOptions opts;
  opts.region_weights.assign(regions.size(), scenario.solver.near_weight);
  opts.farfield_weight = scenario.solver.far_weight;
  opts.threads = threads;
  res.system = assemble(res.basis, regions, targets, scenario.medium, scenario.truncation, opts);

  res.delta = scenario.solver.epsilon_rel * res.system.b.norm();
  if (res.delta > 0.0) {
    res.solution = morozov_search(res.system, res.delta, scenario.solver.tol_rel);
  } else {
    res.solution = morozov_search(res.system, 1.0, scenario.solver.tol_rel);  // flags zero-data
  }

  // On-grid generated fields come straight from the assembled rows.
  const CVector aw = res.system.A * res.solution.w;
  Eigen::Index row = 0;
  for (std::size_t l = 0; l < regions.size(); ++l) {
    RegionOutcome outcome;
    outcome.on_grid = regions[l];
    outcome.generated_on.resize(regions[l].size());
    for (int i = 0; i < regions[l].size(); ++i, ++row)
      outcome.generated_on(i) = aw(row) / res.system.row_weights(row);

    outcome.offset = stability_offset_grid(regions[l], scenario.outputs.offset_fraction);
    const auto& spec = scenario.regions[l].prescription;
    if (spec.kind == Prescription::Kind::File) {
      outcome.offset_prescribed_known = false;  // file values exist only on the grid
    } else {
      apply_prescription(outcome.offset, spec);
    }
    outcome.generated_off = eval_field(res.solution.w, res.basis, outcome.offset.points,
                                       scenario.medium, scenario.truncation, threads,
                                       &res.warnings);
    outcome.metrics_on = region_error_metrics(outcome.generated_on, outcome.on_grid.prescribed);
    if (outcome.offset_prescribed_known)
      outcome.metrics_off = region_error_metrics(outcome.generated_off, outcome.offset.prescribed);
    res.regions.push_back(std::move(outcome));
  }

  for (const auto& target : targets) {
    FarOutcome fo;
    fo.target = target;
    fo.generated = scenario.medium.ocean()
                       ? u_infinity_ocean(target.theta, target.z, res.solution.w, res.basis,
                                          scenario.medium, scenario.truncation)
                       : u_infinity_free(res.solution.w, res.basis, target.direction,
                                         scenario.medium.k);
    res.far.push_back(fo);
  }

  res.boundary = boundary_inputs(res.solution.w, res.basis, scenario.outputs.boundary_n_lat,
                                 scenario.outputs.boundary_n_lon, scenario.medium,
                                 scenario.truncation, threads);
  res.power = radiated_power(res.solution.w, res.basis, scenario.outputs.power_radius,
                             scenario.outputs.power_n_theta, scenario.outputs.power_n_phi,
                             scenario.medium, scenario.truncation, threads);

  std::vector<std::string> names;
  std::vector<CVector> gen_on, pre_on, gen_off, pre_off;
  std::vector<std::string> names_off;
  std::vector<Complex> far_gen, far_pre;
  for (const auto& outcome : res.regions) {
    names.push_back(outcome.on_grid.name);
    gen_on.push_back(outcome.generated_on);
    pre_on.push_back(outcome.on_grid.prescribed);
    if (outcome.offset_prescribed_known) {
      names_off.push_back(outcome.offset.name);
      gen_off.push_back(outcome.generated_off);
      pre_off.push_back(outcome.offset.prescribed);
    }
  }
  for (const auto& fo : res.far) {
    far_gen.push_back(fo.generated);
    far_pre.push_back(fo.target.prescribed);
  }
  res.report_on = error_report(names, gen_on, pre_on, far_gen, far_pre);
  res.report_off = error_report(names_off, gen_off, pre_off, {}, {});
  res.condition = condition_report(res.system);
  return res;
}

RunManifest run_scenario(const Scenario& scenario, const std::string& config_text, int threads) {
  namespace fs = std::filesystem;
  RunManifest manifest;
  manifest.config_hash = fnv1a_hex(config_text);
  manifest.version = kVersion;

  const fs::path out_dir(scenario.outputs.directory);
  fs::create_directories(out_dir);
  auto target = [&out_dir, &manifest](const std::string& name) {
    manifest.files.push_back(name);
    return (out_dir / name).string();
  };

  auto t0 = Clock::now();
  ScenarioResult res = run_scenario_compute(scenario, threads);
  manifest.stage_seconds.emplace_back("compute", seconds_since(t0));

  t0 = Clock::now();
  write_basis_csv(res.basis, target("basis_patches.csv"));
  write_density_csv(res.solution.w, target("density.csv"));
  if (scenario.outputs.dump_system) write_system(res.system, target("system.bin"));

  for (const auto& outcome : res.regions) {
    const std::string& name = outcome.on_grid.name;
    write_region_grid_csv(outcome.on_grid, target("region_" + name + "_grid.csv"));
    write_field_csv(outcome.on_grid.points, outcome.generated_on, &outcome.on_grid.prescribed,
                    target("field_" + name + ".csv"));
    write_field_csv(outcome.offset.points, outcome.generated_off,
                    outcome.offset_prescribed_known ? &outcome.offset.prescribed : nullptr,
                    target("field_" + name + "_offset.csv"));
  }

  for (std::size_t j = 0; j < res.far.size(); ++j) {
    const auto& fo = res.far[j];
    const std::string name = "farfield_patch_" + std::to_string(j + 1) + ".csv";
    if (scenario.medium.ocean()) {
      const auto dirs = make_farfield_patch_ocean(fo.target.theta, fo.target.z,
                                                  scenario.outputs.patch_half_width,
                                                  scenario.outputs.patch_n, scenario.medium.depth);
      CVector values(static_cast<Eigen::Index>(dirs.size()));
      for (Eigen::Index i = 0; i < values.size(); ++i)
        values(i) = u_infinity_ocean(dirs[static_cast<std::size_t>(i)].first,
                                     dirs[static_cast<std::size_t>(i)].second, res.solution.w,
                                     res.basis, scenario.medium, scenario.truncation);
      write_farfield_patch_ocean_csv(dirs, values, target(name));
    } else {
      const auto dirs = make_farfield_patch_free(fo.target.direction,
                                                 scenario.outputs.patch_half_width,
                                                 scenario.outputs.patch_n);
      CVector values(static_cast<Eigen::Index>(dirs.size()));
      for (Eigen::Index i = 0; i < values.size(); ++i)
        values(i) = u_infinity_free(res.solution.w, res.basis, dirs[static_cast<std::size_t>(i)],
                                    scenario.medium.k);
      write_farfield_patch_free_csv(dirs, values, target(name));
    }
  }

  write_boundary_csv(res.boundary, target("boundary_input.csv"));

  OrderedJson diag;
  diag["alpha"] = res.solution.alpha;
  diag["residual_norm"] = res.solution.residual_norm;
  diag["solution_norm"] = res.solution.solution_norm;
  diag["delta"] = res.delta;
  diag["method"] = res.solution.method;
  diag["iterations"] = res.solution.iterations;
  diag["flags"] = res.solution.flags;
  diag["condition"] = {{"sigma_max", res.condition.sigma_max},
                       {"sigma_min", res.condition.sigma_min},
                       {"effective_rank", res.condition.effective_rank},
                       {"row_norm_min", res.condition.row_norm_min},
                       {"row_norm_max", res.condition.row_norm_max},
                       {"col_norm_min", res.condition.col_norm_min},
                       {"col_norm_max", res.condition.col_norm_max}};
  diag["warnings"] = res.warnings;
  dump_json(diag, target("diagnostics.json"));

  OrderedJson power;
  power["p_ave_watts"] = res.power.p_ave;
  power["level_db_re_1e-12W"] = res.power.level_db;
  power["sphere_radius"] = res.power.radius;
  power["n_theta"] = res.power.n_theta;
  power["n_phi"] = res.power.n_phi;
  dump_json(power, target("power.json"));

  OrderedJson errors;
  errors["regions"] = OrderedJson::array();
  for (std::size_t l = 0; l < res.regions.size(); ++l) {
    const auto& outcome = res.regions[l];
    OrderedJson region;
    region["name"] = outcome.on_grid.name;
    region["on_grid"] = metrics_json(outcome.metrics_on);
    if (outcome.offset_prescribed_known) region["offset_grid"] = metrics_json(outcome.metrics_off);
    errors["regions"].push_back(region);
  }
  errors["directions"] = OrderedJson::array();
  for (const auto& de : res.report_on.directions) {
    OrderedJson dir;
    dir["generated"] = complex_json(de.generated);
    dir["prescribed"] = complex_json(de.prescribed);
    dir["abs_error"] = de.abs_error;
    if (de.has_rel) dir["rel_error"] = de.rel_error;
    errors["directions"].push_back(dir);
  }
  dump_json(errors, target("error_report.json"));
  manifest.stage_seconds.emplace_back("reports", seconds_since(t0));

  OrderedJson mj;
  mj["config_hash"] = manifest.config_hash;
  mj["version"] = manifest.version;
  mj["stages"] = OrderedJson::object();
  for (const auto& [stage, secs] : manifest.stage_seconds) mj["stages"][stage] = secs;
  mj["files"] = manifest.files;
  manifest.files.push_back("manifest.json");
  dump_json(mj, (out_dir / "manifest.json").string());

  return manifest;
}

}  // namespace helm
