#include "helmcontrol/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "helmcontrol/parallel.hpp"
#include "helmcontrol/specfun.hpp"

namespace helm {

namespace {

Complex single_layer_at(const CVector& density, const BasisSet& basis, const Vec3& point,
                        const Medium& medium, const ModeTruncation& trunc, HankelTable* table) {
  Complex sum{0.0, 0.0};
  for (int j = 0; j < basis.size(); ++j) {
    const auto& patch = basis.patches[static_cast<std::size_t>(j)];
    Complex patch_val{0.0, 0.0};
    for (std::size_t n = 0; n < patch.nodes.size(); ++n) {
      const Complex kernel = medium.ocean()
                                 ? green_ocean(point, patch.nodes[n], medium, trunc, table)
                                 : phi_free(point, patch.nodes[n], medium.k);
      patch_val += patch.weights[n] * kernel;
    }
    sum += density(j) * patch_val;
  }
  return sum;
}

// Analytic radial derivative of the free-space single layer at point, along
// direction n (unit).
Complex single_layer_dn_free(const CVector& density, const BasisSet& basis, const Vec3& point,
                             const Vec3& n, double k) {
  Complex sum{0.0, 0.0};
  for (int j = 0; j < basis.size(); ++j) {
    const auto& patch = basis.patches[static_cast<std::size_t>(j)];
    Complex patch_val{0.0, 0.0};
    for (std::size_t q = 0; q < patch.nodes.size(); ++q)
      patch_val += patch.weights[q] * dphi_dn_free(patch.nodes[q], point, n, k);
    sum += density(j) * patch_val;
  }
  return sum;
}

}  // namespace

CVector eval_field(const CVector& density, const BasisSet& basis, const std::vector<Vec3>& points,
                   const Medium& medium, const ModeTruncation& trunc, int threads,
                   std::vector<std::string>* warnings) {
  if (density.size() != basis.size())
    throw std::invalid_argument("eval_field: density length must equal basis size");
  medium.validate();

  if (warnings) {
    const double margin = basis.max_patch_diameter();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double gap =
          (points[i] - basis.geom.center).norm() - basis.geom.fictitious_radius;
      if (gap < margin)
        warnings->push_back("eval_field: point " + std::to_string(i) +
                            " is near-singular (distance to fictitious surface " +
                            std::to_string(gap) + " m)");
    }
  }

  CVector out(static_cast<Eigen::Index>(points.size()));
  if (medium.ocean()) {
    // one bounded Hankel memo per worker; hits are bit-identical to recomputation
    const int workers = std::max(1, threads);
    std::vector<std::unique_ptr<HankelTable>> tables;
    tables.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      tables.push_back(std::make_unique<HankelTable>(medium, trunc));
    const std::int64_t n = static_cast<std::int64_t>(points.size());
    const std::int64_t chunk = (n + workers - 1) / workers;
    parallel_for(n, threads, [&](std::int64_t i) {
      const int w = static_cast<int>(std::min<std::int64_t>(i / std::max<std::int64_t>(chunk, 1),
                                                            workers - 1));
      out(i) = single_layer_at(density, basis, points[static_cast<std::size_t>(i)], medium, trunc,
                               tables[static_cast<std::size_t>(w)].get());
    });
  } else {
    parallel_for(static_cast<std::int64_t>(points.size()), threads, [&](std::int64_t i) {
      out(i) = single_layer_at(density, basis, points[static_cast<std::size_t>(i)], medium, trunc,
                               nullptr);
    });
  }
  return out;
}

BoundaryInput boundary_inputs(const CVector& density, const BasisSet& basis, int n_lat, int n_lon,
                              const Medium& medium, const ModeTruncation& trunc, int threads) {
  basis.geom.validate();
  BoundaryInput bi;
  sphere_surface_grid(basis.geom.center, basis.geom.physical_radius, n_lat, n_lon, bi.points,
                      bi.normals);
  bi.pressure = eval_field(density, basis, bi.points, medium, trunc, threads, nullptr);

  const Eigen::Index n = static_cast<Eigen::Index>(bi.points.size());
  bi.velocity.resize(n);
  const Complex scale = Complex(0.0, -1.0) / (medium.rho * medium.c * medium.k);
  if (medium.ocean()) {
    const double step = 1e-4 * basis.geom.physical_radius;
    std::vector<Vec3> plus(bi.points.size()), minus(bi.points.size());
    for (std::size_t i = 0; i < bi.points.size(); ++i) {
      plus[i] = bi.points[i] + step * bi.normals[i];
      minus[i] = bi.points[i] - step * bi.normals[i];
    }
    const CVector up = eval_field(density, basis, plus, medium, trunc, threads, nullptr);
    const CVector um = eval_field(density, basis, minus, medium, trunc, threads, nullptr);
    bi.velocity = scale * (up - um) / (2.0 * step);
  } else {
    parallel_for(n, threads, [&](std::int64_t i) {
      bi.velocity(i) = scale * single_layer_dn_free(density, basis,
                                                    bi.points[static_cast<std::size_t>(i)],
                                                    bi.normals[static_cast<std::size_t>(i)],
                                                    medium.k);
    });
  }
  return bi;
}

Complex u_infinity_free(const CVector& density, const BasisSet& basis, const Vec3& xhat,
                        double k) {
  if (std::abs(xhat.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("u_infinity_free: direction must be a unit vector");
  if (density.size() != basis.size())
    throw std::invalid_argument("u_infinity_free: density length must equal basis size");
  Complex sum{0.0, 0.0};
  for (int j = 0; j < basis.size(); ++j) {
    const auto& patch = basis.patches[static_cast<std::size_t>(j)];
    Complex patch_val{0.0, 0.0};
    for (std::size_t n = 0; n < patch.nodes.size(); ++n)
      patch_val += patch.weights[n] * farfield_kernel_free(xhat, patch.nodes[n], k);
    sum += density(j) * patch_val;
  }
  return sum;
}

PowerReport radiated_power(const CVector& density, const BasisSet& basis, double radius,
                           int n_theta, int n_phi, const Medium& medium,
                           const ModeTruncation& trunc, int threads) {
  basis.geom.validate();
  medium.validate();
  if (!(radius > basis.geom.physical_radius))
    throw std::invalid_argument("radiated_power: sphere must enclose the physical source");
  if (n_theta < 16 || n_phi < 16)
    throw std::invalid_argument("radiated_power: quadrature counts must be >= 16");
  if (medium.ocean()) {
    const double zc = basis.geom.center.z();
    if (zc + radius >= 0.0 || zc - radius <= medium.depth)
      throw GeometryViolation("radiated_power: integration sphere exits the ocean layer");
  }

  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(n_theta, gl_nodes, gl_weights);

  std::vector<Vec3> points, norms;
  std::vector<double> weights;  // surface measure r^2 dphi d(cos theta)
  points.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double ct = gl_nodes[static_cast<std::size_t>(i)];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = dphi * (j + 0.5);
      const Vec3 n(st * std::cos(phi), st * std::sin(phi), ct);
      norms.push_back(n);
      points.push_back(basis.geom.center + radius * n);
      weights.push_back(radius * radius * gl_weights[static_cast<std::size_t>(i)] * dphi);
    }
  }

  const CVector u = eval_field(density, basis, points, medium, trunc, threads, nullptr);
  CVector dudn(static_cast<Eigen::Index>(points.size()));
  if (medium.ocean()) {
    const double step = 1e-5 * radius;
    std::vector<Vec3> plus(points.size()), minus(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      plus[i] = points[i] + step * norms[i];
      minus[i] = points[i] - step * norms[i];
    }
    const CVector up = eval_field(density, basis, plus, medium, trunc, threads, nullptr);
    const CVector um = eval_field(density, basis, minus, medium, trunc, threads, nullptr);
    dudn = (up - um) / (2.0 * step);
  } else {
    parallel_for(static_cast<std::int64_t>(points.size()), threads, [&](std::int64_t i) {
      dudn(i) = single_layer_dn_free(density, basis, points[static_cast<std::size_t>(i)],
                                     norms[static_cast<std::size_t>(i)], medium.k);
    });
  }

  // Time-averaged outward flux for the e^{-i omega t} convention:
  // Im[conj(u) du/dn] is the radiating part (Re is purely reactive and
  // integrates to a radius-dependent artifact).
  double power = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    power += weights[static_cast<std::size_t>(i)] *
             std::imag(std::conj(u(i)) * dudn(i));
  power *= 0.5;

  PowerReport rep;
  rep.p_ave = power;
  rep.level_db = power > 0.0 ? 10.0 * std::log10(power / kPowerReferenceWatts)
                             : -std::numeric_limits<double>::infinity();
  rep.radius = radius;
  rep.n_theta = n_theta;
  rep.n_phi = n_phi;
  return rep;
}

RegionErrorMetrics region_error_metrics(const CVector& generated, const CVector& prescribed) {
  if (generated.size() != prescribed.size())
    throw std::invalid_argument("region_error_metrics: size mismatch");
  RegionErrorMetrics m;
  for (Eigen::Index i = 0; i < generated.size(); ++i) {
    const double diff = std::abs(generated(i) - prescribed(i));
    m.l2_error += diff * diff;
    m.max_abs_field = std::max(m.max_abs_field, std::abs(generated(i)));
    const double f = std::abs(prescribed(i));
    if (f > kNullTargetFloor) {
      m.has_rel = true;
      m.max_rel_error = std::max(m.max_rel_error, diff / f);
    }
  }
  m.l2_error = std::sqrt(m.l2_error);
  return m;
}

ErrorReport error_report(const std::vector<std::string>& region_names,
                         const std::vector<CVector>& generated_per_region,
                         const std::vector<CVector>& prescribed_per_region,
                         const std::vector<Complex>& generated_far,
                         const std::vector<Complex>& prescribed_far) {
  if (region_names.size() != generated_per_region.size() ||
      generated_per_region.size() != prescribed_per_region.size() ||
      generated_far.size() != prescribed_far.size())
    throw std::invalid_argument("error_report: size mismatch");
  ErrorReport rep;
  rep.region_names = region_names;
  for (std::size_t l = 0; l < generated_per_region.size(); ++l)
    rep.regions.push_back(region_error_metrics(generated_per_region[l], prescribed_per_region[l]));
  for (std::size_t j = 0; j < generated_far.size(); ++j) {
    DirectionError de;
    de.generated = generated_far[j];
    de.prescribed = prescribed_far[j];
    de.abs_error = std::abs(de.generated - de.prescribed);
    if (std::abs(de.prescribed) > kNullTargetFloor) {
      de.has_rel = true;
      de.rel_error = de.abs_error / std::abs(de.prescribed);
    }
    rep.directions.push_back(de);
  }
  return rep;
}

ControlRegion stability_offset_grid(const ControlRegion& region, double offset_fraction) {
  if (!(offset_fraction > 0.0 && offset_fraction <= 0.5))
    throw std::invalid_argument("stability_offset_grid: offset_fraction must be in (0, 0.5]");

  auto offset_axis = [offset_fraction](double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
      out[0] = 0.5 * (a + b);
      return out;
    }
    const double step = (b - a) / (n - 1);
    for (int i = 0; i + 1 < n; ++i) out[static_cast<std::size_t>(i)] = a + (i + offset_fraction) * step;
    out.back() = b - offset_fraction * step;  // folded back inside the bounds
    return out;
  };

  ControlRegion out;
  out.name = region.name + "_offset";
  out.center = region.center;
  out.bounds = region.bounds;
  out.n_r = region.n_r;
  out.n_theta = region.n_theta;
  out.n_phi = region.n_phi;
  const auto rs = offset_axis(region.bounds.r0, region.bounds.r1, region.n_r);
  const auto ts = offset_axis(region.bounds.theta0, region.bounds.theta1, region.n_theta);
  const auto ps = offset_axis(region.bounds.phi0, region.bounds.phi1, region.n_phi);
  out.points.reserve(rs.size() * ts.size() * ps.size());
  for (double rv : rs)
    for (double tv : ts)
      for (double pv : ps) out.points.push_back(out.center + from_spherical(rv, tv, pv));
  out.prescribed = CVector::Zero(static_cast<Eigen::Index>(out.points.size()));
  return out;
}

}  // namespace helm
