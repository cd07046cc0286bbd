#include "helmcontrol/propagator.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "helmcontrol/parallel.hpp"

namespace helm {

namespace {

Complex near_entry(const SurfacePatch& patch, const Vec3& point, const Medium& medium,
                   const ModeTruncation& trunc) {
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < patch.nodes.size(); ++n) {
    const Complex kernel = medium.ocean()
                               ? green_ocean(point, patch.nodes[n], medium, trunc)
                               : phi_free(point, patch.nodes[n], medium.k);
    sum += patch.weights[n] * kernel;
  }
  return sum;
}

Complex far_entry(const SurfacePatch& patch, const FarFieldTarget& target, const Medium& medium,
                  const ModeTruncation& trunc, int n_prop) {
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < patch.nodes.size(); ++n) {
    Complex kernel{0.0, 0.0};
    if (medium.ocean()) {
      for (int p = 0; p < n_prop; ++p)
        kernel += ocean_farfield_kernel(p, target.theta, target.z, patch.nodes[n], medium,
                                        trunc.q_max);
    } else {
      kernel = farfield_kernel_free(target.direction, patch.nodes[n], medium.k);
    }
    sum += patch.weights[n] * kernel;
  }
  return sum;
}

}  // namespace

PropagatorSystem assemble(const BasisSet& basis, const std::vector<ControlRegion>& regions,
                          const std::vector<FarFieldTarget>& targets, const Medium& medium,
                          const ModeTruncation& trunc, const AssemblyOptions& options) {
  medium.validate();
  basis.geom.validate();
  if (basis.size() == 0) throw std::invalid_argument("assemble: empty basis");
  if (!options.region_weights.empty() && options.region_weights.size() != regions.size())
    throw std::invalid_argument("assemble: region_weights size mismatch");
  validate_farfield_targets(targets, medium.ocean(), medium.depth);
  if (medium.ocean() && trunc.p_max < propagating_mode_count(medium.k, medium.depth))
    throw std::invalid_argument("assemble: trunc.p_max must cover all propagating modes");
  for (const auto& region : regions) {
    check_region_separation(region, basis.geom);
    for (int i = 0; i < region.size(); ++i) {
      const auto& p = region.points[static_cast<std::size_t>(i)];
      if ((p - basis.geom.center).norm() <= basis.geom.fictitious_radius)
        throw GeometryViolation("assemble: collocation point " + std::to_string(i) +
                                " of region '" + region.name +
                                "' lies inside the fictitious source ball");
    }
  }

  Eigen::Index n_rows = static_cast<Eigen::Index>(targets.size());
  for (const auto& region : regions) n_rows += region.size();
  const Eigen::Index n_cols = basis.size();

  PropagatorSystem sys;
  sys.A.resize(n_rows, n_cols);
  sys.b.resize(n_rows);
  sys.row_weights.resize(n_rows);
  sys.row_map.resize(static_cast<std::size_t>(n_rows));

  struct RowJob {
    const ControlRegion* region = nullptr;  // null for far-field rows
    int index = 0;
    double weight = 1.0;
  };
  std::vector<RowJob> jobs(static_cast<std::size_t>(n_rows));
  Eigen::Index row = 0;
  for (std::size_t l = 0; l < regions.size(); ++l) {
    const double w = options.region_weights.empty() ? 1.0 : options.region_weights[l];
    if (!(w > 0.0)) throw std::invalid_argument("assemble: row weights must be positive");
    for (int i = 0; i < regions[l].size(); ++i, ++row) {
      jobs[static_cast<std::size_t>(row)] = {&regions[l], i, w};
      sys.row_map[static_cast<std::size_t>(row)] = {regions[l].name, i, false};
    }
  }
  if (!(options.farfield_weight > 0.0))
    throw std::invalid_argument("assemble: row weights must be positive");
  for (std::size_t j = 0; j < targets.size(); ++j, ++row) {
    jobs[static_cast<std::size_t>(row)] = {nullptr, static_cast<int>(j),
                                           options.farfield_weight};
    sys.row_map[static_cast<std::size_t>(row)] = {"farfield", static_cast<int>(j), true};
  }

  const int n_prop = medium.ocean() ? propagating_mode_count(medium.k, medium.depth) : 0;
  parallel_for(n_rows, options.threads, [&](std::int64_t r) {
    const RowJob& job = jobs[static_cast<std::size_t>(r)];
    sys.row_weights[r] = job.weight;
    if (job.region) {
      const Vec3& point = job.region->points[static_cast<std::size_t>(job.index)];
      for (Eigen::Index j = 0; j < n_cols; ++j)
        sys.A(r, j) =
            job.weight * near_entry(basis.patches[static_cast<std::size_t>(j)], point, medium, trunc);
      sys.b(r) = job.weight * job.region->prescribed(job.index);
    } else {
      const FarFieldTarget& target = targets[static_cast<std::size_t>(job.index)];
      for (Eigen::Index j = 0; j < n_cols; ++j)
        sys.A(r, j) = job.weight * far_entry(basis.patches[static_cast<std::size_t>(j)], target,
                                             medium, trunc, n_prop);
      sys.b(r) = job.weight * target.prescribed;
    }
  });

  for (Eigen::Index r = 0; r < n_rows; ++r) {
    if (!std::isfinite(sys.b(r).real()) || !std::isfinite(sys.b(r).imag()))
      throw NumericalFailure("assemble: non-finite prescription at row " + std::to_string(r));
    for (Eigen::Index j = 0; j < n_cols; ++j) {
      const Complex v = sys.A(r, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericalFailure("assemble: non-finite entry at row " + std::to_string(r) +
                               ", column " + std::to_string(j));
    }
  }
  return sys;
}

ConditionReport condition_report(const PropagatorSystem& sys) {
  ConditionReport rep;
  Eigen::JacobiSVD<CMatrix> svd(sys.A);
  const auto& sv = svd.singularValues();
  rep.sigma_max = sv.size() ? sv(0) : 0.0;
  rep.sigma_min = sv.size() ? sv(sv.size() - 1) : 0.0;
  rep.effective_rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) >= 1e-12 * rep.sigma_max) ++rep.effective_rank;
  rep.row_norm_min = rep.col_norm_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
    const double n = sys.A.row(r).norm();
    rep.row_norm_min = std::min(rep.row_norm_min, n);
    rep.row_norm_max = std::max(rep.row_norm_max, n);
  }
  for (Eigen::Index c = 0; c < sys.A.cols(); ++c) {
    const double n = sys.A.col(c).norm();
    rep.col_norm_min = std::min(rep.col_norm_min, n);
    rep.col_norm_max = std::max(rep.col_norm_max, n);
  }
  return rep;
}

void write_system(const PropagatorSystem& sys, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_system: cannot open " + path);
  const char magic[4] = {'H', 'C', 'P', 'M'};
  const std::uint32_t rows = static_cast<std::uint32_t>(sys.A.rows());
  const std::uint32_t cols = static_cast<std::uint32_t>(sys.A.cols());
  const std::uint32_t flags = 0;
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  out.write(reinterpret_cast<const char*>(&flags), 4);
  for (Eigen::Index r = 0; r < sys.A.rows(); ++r)
    for (Eigen::Index c = 0; c < sys.A.cols(); ++c) {
      const double re = sys.A(r, c).real(), im = sys.A(r, c).imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
  for (Eigen::Index r = 0; r < sys.b.size(); ++r) {
    const double re = sys.b(r).real(), im = sys.b(r).imag();
    out.write(reinterpret_cast<const char*>(&re), 8);
    out.write(reinterpret_cast<const char*>(&im), 8);
  }
  if (!out) throw std::runtime_error("write_system: write failed for " + path);
}

PropagatorSystem read_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_system: cannot open " + path);
  char magic[4];
  std::uint32_t rows = 0, cols = 0, flags = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  in.read(reinterpret_cast<char*>(&flags), 4);
  if (!in || std::memcmp(magic, "HCPM", 4) != 0)
    throw std::runtime_error("read_system: bad header in " + path);
  PropagatorSystem sys;
  sys.A.resize(rows, cols);
  sys.b.resize(rows);
  sys.row_weights = RVector::Ones(rows);
  auto read_complex = [&in]() {
    double re = 0.0, im = 0.0;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    return Complex(re, im);
  };
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c) sys.A(r, c) = read_complex();
  for (std::uint32_t r = 0; r < rows; ++r) sys.b(r) = read_complex();
  if (!in) throw std::runtime_error("read_system: truncated file " + path);
  return sys;
}

}  // namespace helm
