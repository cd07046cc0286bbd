#include "helmcontrol/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "helmcontrol/toml_lite.hpp"

namespace helm {

namespace {

Vec3 vec3_from(const toml::Value& v, const std::string& what) {
  const auto nums = v.as_numbers(what);
  if (nums.size() != 3) throw ConfigError(what + ": expected 3 components");
  return {nums[0], nums[1], nums[2]};
}

Complex complex_from(const toml::Value& v, const std::string& what) {
  if (v.kind == toml::Value::Kind::Number) return {v.num, 0.0};
  const auto nums = v.as_numbers(what);
  if (nums.size() != 2) throw ConfigError(what + ": expected [re, im]");
  return {nums[0], nums[1]};
}

std::string join_path(const std::string& base, const std::string& rel) {
  if (rel.empty() || rel.front() == '/') return rel;
  if (base.empty() || base == ".") return rel;
  return base + "/" + rel;
}

}  // namespace

Scenario parse_scenario(const std::string& toml_text, const std::string& base_dir) {
  const toml::Document doc = toml::parse(toml_text);
  Scenario s;
  s.title = doc.root.string_or("title", "");

  // [medium]
  {
    auto it = doc.tables.find("medium");
    if (it == doc.tables.end()) throw ConfigError("config: missing [medium]");
    const toml::Table& t = it->second;
    const std::string kind = t.string_or("type", "free_space");
    if (kind == "free_space") {
      s.medium.kind = MediumKind::FreeSpace;
    } else if (kind == "ocean") {
      s.medium.kind = MediumKind::Ocean;
      s.medium.depth = t.number("depth", "medium");
    } else {
      throw ConfigError("medium.type: expected \"free_space\" or \"ocean\"");
    }
    s.medium.k = t.number("k", "medium");
    s.medium.rho = t.number_or("rho", 1000.0);
    s.medium.c = t.number_or("c", 1500.0);
  }

  // [source]
  {
    auto it = doc.tables.find("source");
    if (it == doc.tables.end()) throw ConfigError("config: missing [source]");
    const toml::Table& t = it->second;
    if (t.has("center")) s.source.center = vec3_from(t.at("center", "source"), "source.center");
    s.source.fictitious_radius = t.number("fictitious_radius", "source");
    s.source.physical_radius = t.number("physical_radius", "source");
    s.n_lat = static_cast<int>(t.number_or("n_lat", 13));
    s.n_lon = static_cast<int>(t.number_or("n_lon", 18));
    s.quadrature_per_axis = static_cast<int>(t.number_or("quadrature_per_axis", 1));
  }

  // [[region]]
  if (auto it = doc.table_arrays.find("region"); it != doc.table_arrays.end()) {
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      const toml::Table& t = it->second[i];
      const std::string ctx = "region[" + std::to_string(i) + "]";
      RegionSpec r;
      r.name = t.string_or("name", "W" + std::to_string(i + 1));
      const auto rr = t.at("r", ctx).as_numbers(ctx + ".r");
      const auto tt = t.at("theta", ctx).as_numbers(ctx + ".theta");
      const auto pp = t.at("phi", ctx).as_numbers(ctx + ".phi");
      if (rr.size() != 2 || tt.size() != 2 || pp.size() != 2)
        throw ConfigError(ctx + ": r/theta/phi must be [lo, hi] pairs");
      r.bounds = {rr[0], rr[1], tt[0], tt[1], pp[0], pp[1]};
      const auto counts = t.at("counts", ctx).as_numbers(ctx + ".counts");
      if (counts.size() != 3) throw ConfigError(ctx + ".counts: expected [n_r, n_theta, n_phi]");
      r.n_r = static_cast<int>(counts[0]);
      r.n_theta = static_cast<int>(counts[1]);
      r.n_phi = static_cast<int>(counts[2]);

      const std::string kind = t.string_or("prescription", "null");
      if (kind == "null") {
        r.prescription.kind = Prescription::Kind::Null;
      } else if (kind == "plane_wave") {
        r.prescription.kind = Prescription::Kind::PlaneWave;
        r.prescription.direction =
            vec3_from(t.at("plane_wave_direction", ctx), ctx + ".plane_wave_direction");
        r.prescription.wavenumber = t.number("plane_wave_wavenumber", ctx);
      } else if (kind == "file") {
        r.prescription.kind = Prescription::Kind::File;
        r.prescription.file = join_path(base_dir, t.at("field_file", ctx).as_string(ctx));
      } else {
        throw ConfigError(ctx + ".prescription: expected null | plane_wave | file");
      }
      s.regions.push_back(std::move(r));
    }
  }

  // [[farfield]]
  if (auto it = doc.table_arrays.find("farfield"); it != doc.table_arrays.end()) {
    for (std::size_t j = 0; j < it->second.size(); ++j) {
      const toml::Table& t = it->second[j];
      const std::string ctx = "farfield[" + std::to_string(j) + "]";
      FarFieldSpec f;
      if (s.medium.ocean()) {
        f.theta = t.number("theta", ctx);
        f.z = t.number("z", ctx);
      } else {
        f.direction = vec3_from(t.at("direction", ctx), ctx + ".direction");
      }
      f.value = complex_from(t.at("value", ctx), ctx + ".value");
      s.farfield.push_back(f);
    }
  }

  // [solver]
  if (auto it = doc.tables.find("solver"); it != doc.tables.end()) {
    const toml::Table& t = it->second;
    s.solver.epsilon_rel = t.number_or("epsilon_rel", s.solver.epsilon_rel);
    s.solver.tol_rel = t.number_or("tol_rel", s.solver.tol_rel);
    s.solver.near_weight = t.number_or("near_weight", s.solver.near_weight);
    s.solver.far_weight = t.number_or("far_weight", s.solver.far_weight);
  }

  // [truncation]
  if (auto it = doc.tables.find("truncation"); it != doc.tables.end()) {
    const toml::Table& t = it->second;
    s.truncation.p_max = static_cast<int>(t.number_or("p_max", s.truncation.p_max));
    s.truncation.q_max = static_cast<int>(t.number_or("q_max", s.truncation.q_max));
  }

  // [outputs]
  if (auto it = doc.tables.find("outputs"); it != doc.tables.end()) {
    const toml::Table& t = it->second;
    s.outputs.directory = t.string_or("directory", s.outputs.directory);
    s.outputs.patch_half_width = t.number_or("patch_half_width", s.outputs.patch_half_width);
    s.outputs.patch_n = static_cast<int>(t.number_or("patch_n", s.outputs.patch_n));
    s.outputs.power_radius = t.number_or("power_radius", s.outputs.power_radius);
    s.outputs.power_n_theta = static_cast<int>(t.number_or("power_n_theta", s.outputs.power_n_theta));
    s.outputs.power_n_phi = static_cast<int>(t.number_or("power_n_phi", s.outputs.power_n_phi));
    s.outputs.offset_fraction = t.number_or("offset_fraction", s.outputs.offset_fraction);
    s.outputs.boundary_n_lat = static_cast<int>(t.number_or("boundary_n_lat", s.outputs.boundary_n_lat));
    s.outputs.boundary_n_lon = static_cast<int>(t.number_or("boundary_n_lon", s.outputs.boundary_n_lon));
    s.outputs.dump_system = t.bool_or("dump_system", s.outputs.dump_system);
  }

  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string base = ".";
  if (const auto slash = path.find_last_of('/'); slash != std::string::npos)
    base = path.substr(0, slash);
  return parse_scenario(buf.str(), base);
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> issues;
  auto check = [&issues](bool ok, const std::string& msg) {
    if (!ok) issues.push_back(msg);
  };

  try {
    s.medium.validate();
  } catch (const std::exception& e) {
    issues.emplace_back(e.what());
  }
  try {
    s.source.validate();
  } catch (const std::exception& e) {
    issues.emplace_back(e.what());
  }
  check(s.n_lat >= 1 && s.n_lon >= 1, "source: n_lat and n_lon must be >= 1");
  check(s.quadrature_per_axis == 1 || s.quadrature_per_axis == 2,
        "source: quadrature_per_axis must be 1 or 2");

  if (s.medium.ocean()) {
    const double zc = s.source.center.z();
    check(zc - s.source.physical_radius > s.medium.depth && zc + s.source.physical_radius < 0.0,
          "source: physical ball must lie strictly inside the ocean layer");
  }

  for (const auto& r : s.regions) {
    const std::string who = "region '" + r.name + "'";
    check(r.bounds.r0 > 0.0, who + ": r0 must be > 0");
    check(r.bounds.r1 >= r.bounds.r0 && r.bounds.theta1 >= r.bounds.theta0 &&
              r.bounds.phi1 >= r.bounds.phi0,
          who + ": bounds must be ordered");
    check(r.n_r >= 1 && r.n_theta >= 1 && r.n_phi >= 1, who + ": counts must be >= 1");
    if (r.prescription.kind == Prescription::Kind::PlaneWave) {
      check(std::abs(r.prescription.direction.norm() - 1.0) <= 1e-12,
            who + ": plane_wave_direction must be a unit vector");
      check(r.prescription.wavenumber > 0.0, who + ": plane_wave_wavenumber must be > 0");
    }
    if (issues.empty()) {
      try {
        auto region = make_annular_sector_grid(r.name, s.source.center, r.bounds, r.n_r, r.n_theta,
                                               r.n_phi, &s.source);
        if (s.medium.ocean()) {
          for (const auto& p : region.points)
            if (p.z() < s.medium.depth || p.z() > 0.0) {
              issues.push_back(who + ": grid leaves the ocean layer");
              break;
            }
        }
      } catch (const std::exception& e) {
        issues.emplace_back(e.what());
      }
    }
  }

  try {
    validate_farfield_targets(build_farfield_targets(s), s.medium.ocean(), s.medium.depth);
  } catch (const std::exception& e) {
    issues.emplace_back(e.what());
  }

  check(s.solver.epsilon_rel > 0.0, "solver: epsilon_rel must be > 0");
  check(s.solver.tol_rel > 0.0, "solver: tol_rel must be > 0");
  check(s.solver.near_weight > 0.0 && s.solver.far_weight > 0.0,
        "solver: row weights must be > 0");
  check(s.truncation.p_max >= 1, "truncation: p_max must be >= 1");
  check(s.truncation.q_max >= 0, "truncation: q_max must be >= 0");
  if (s.medium.ocean()) {
    try {
      check(s.truncation.p_max >= propagating_mode_count(s.medium.k, s.medium.depth),
            "truncation: p_max must cover all propagating modes");
    } catch (const std::exception& e) {
      issues.emplace_back(e.what());
    }
  }
  check(s.outputs.offset_fraction > 0.0 && s.outputs.offset_fraction <= 0.5,
        "outputs: offset_fraction must be in (0, 0.5]");
  check(s.outputs.patch_n >= 1 && s.outputs.patch_n % 2 == 1,
        "outputs: patch_n must be odd");
  check(s.outputs.power_radius > s.source.physical_radius,
        "outputs: power_radius must enclose the physical source");
  check(s.outputs.power_n_theta >= 16 && s.outputs.power_n_phi >= 16,
        "outputs: power quadrature counts must be >= 16");
  return issues;
}

BasisSet build_basis(const Scenario& s) {
  return make_sphere_patch_basis(s.source, s.n_lat, s.n_lon, s.quadrature_per_axis);
}

std::vector<ControlRegion> build_regions(const Scenario& s) {
  std::vector<ControlRegion> regions;
  regions.reserve(s.regions.size());
  for (const auto& spec : s.regions) {
    ControlRegion region = make_annular_sector_grid(spec.name, s.source.center, spec.bounds,
                                                    spec.n_r, spec.n_theta, spec.n_phi, &s.source);
    apply_prescription(region, spec.prescription);
    regions.push_back(std::move(region));
  }
  return regions;
}

std::vector<FarFieldTarget> build_farfield_targets(const Scenario& s) {
  std::vector<FarFieldTarget> targets;
  targets.reserve(s.farfield.size());
  for (const auto& f : s.farfield) {
    FarFieldTarget t;
    t.ocean = s.medium.ocean();
    t.direction = f.direction;
    t.theta = f.theta;
    t.z = f.z;
    t.prescribed = f.value;
    targets.push_back(t);
  }
  return targets;
}

void apply_prescription(ControlRegion& region, const Prescription& prescription) {
  switch (prescription.kind) {
    case Prescription::Kind::Null:
      region.prescribed.setZero();
      break;
    case Prescription::Kind::PlaneWave: {
      const Vec3 kvec = prescription.wavenumber * prescription.direction;
      for (int i = 0; i < region.size(); ++i)
        region.prescribed(i) =
            std::polar(1.0, kvec.dot(region.points[static_cast<std::size_t>(i)]));
      break;
    }
    case Prescription::Kind::File: {
      std::ifstream in(prescription.file);
      if (!in) throw ConfigError("cannot open field file: " + prescription.file);
      std::string line;
      Eigen::Index i = 0;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (i >= region.prescribed.size())
          throw ConfigError("field file " + prescription.file + ": too many rows");
        double re = 0.0, im = 0.0;
        char comma = 0;
        std::istringstream row(line);
        row >> re >> comma >> im;
        if (!row || comma != ',')
          throw ConfigError("field file " + prescription.file + ": expected 're,im' rows");
        region.prescribed(i++) = Complex(re, im);
      }
      if (i != region.prescribed.size())
        throw ConfigError("field file " + prescription.file + ": expected " +
                          std::to_string(region.prescribed.size()) + " rows, got " +
                          std::to_string(i));
      break;
    }
  }
}

const BundledConfig* find_bundled_config(const std::string& name) {
  for (const auto& cfg : bundled_configs())
    if (cfg.name == name || cfg.name + ".toml" == name) return &cfg;
  return nullptr;
}

}  // namespace helm
