#include "helmcontrol/geometry.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helm {

namespace {

// Uniform nodes over [a, b], endpoints included; n = 1 gives the midpoint.
std::vector<double> axis_nodes(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = 0.5 * (a + b);
    return out;
  }
  const double step = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + i * step;
  out.back() = b;
  return out;
}

}  // namespace

Vec3 from_spherical(double r, double theta, double phi) {
  const double st = std::sin(theta);
  return {r * st * std::cos(phi), r * st * std::sin(phi), r * std::cos(theta)};
}

Vec3 to_spherical(const Vec3& p) {
  const double r = p.norm();
  if (r == 0.0) return {0.0, 0.0, 0.0};
  const double theta = std::acos(std::clamp(p.z() / r, -1.0, 1.0));
  double phi = std::atan2(p.y(), p.x());
  if (phi < 0.0) phi += 2.0 * kPi;
  return {r, theta, phi};
}

Vec3 from_cylindrical(double r, double theta, double z) {
  return {r * std::cos(theta), r * std::sin(theta), z};
}

Vec3 to_cylindrical(const Vec3& p) {
  const double r = std::hypot(p.x(), p.y());
  double theta = std::atan2(p.y(), p.x());
  if (theta < 0.0) theta += 2.0 * kPi;
  return {r, theta, p.z()};
}

void SourceGeometry::validate() const {
  if (!(fictitious_radius > 0.0))
    throw std::invalid_argument("source: fictitious_radius must be > 0");
  if (!(physical_radius > fictitious_radius))
    throw std::invalid_argument("source: need 0 < fictitious_radius < physical_radius");
}

double BasisSet::max_patch_diameter() const {
  double d = 0.0;
  for (const auto& p : patches) {
    // band height + slice arc length at the band midline
    const double dt = kPi / n_lat * geom.fictitious_radius;
    const double sin_mid = std::hypot(p.centroid.x() - geom.center.x(),
                                      p.centroid.y() - geom.center.y()) /
                           geom.fictitious_radius;
    const double dp = 2.0 * kPi / n_lon * geom.fictitious_radius * sin_mid;
    d = std::max(d, std::hypot(dt, dp));
  }
  return d;
}

BasisSet make_sphere_patch_basis(const SourceGeometry& geom, int n_lat, int n_lon,
                                 int gauss_per_axis) {
  geom.validate();
  if (n_lat < 1 || n_lon < 1)
    throw std::invalid_argument("make_sphere_patch_basis: counts must be >= 1");
  if (gauss_per_axis != 1 && gauss_per_axis != 2)
    throw std::invalid_argument("make_sphere_patch_basis: gauss_per_axis must be 1 or 2");

  BasisSet basis;
  basis.geom = geom;
  basis.n_lat = n_lat;
  basis.n_lon = n_lon;
  basis.patches.reserve(static_cast<std::size_t>(n_lat) * n_lon);

  const double r = geom.fictitious_radius;
  const double dphi = 2.0 * kPi / n_lon;
  // 2-point Gauss abscissae on [-1/2, 1/2]
  const double g = 0.5 / std::sqrt(3.0);

  for (int i = 0; i < n_lat; ++i) {
    const double ta = kPi * i / n_lat;
    const double tb = kPi * (i + 1) / n_lat;
    const double band = std::cos(ta) - std::cos(tb);  // > 0
    for (int j = 0; j < n_lon; ++j) {
      const double pa = dphi * j;
      SurfacePatch patch;
      patch.area = r * r * dphi * band;
      patch.normal = from_spherical(1.0, 0.5 * (ta + tb), pa + 0.5 * dphi);
      patch.centroid = geom.center + r * patch.normal;
      if (gauss_per_axis == 1) {
        patch.nodes = {patch.centroid};
        patch.weights = {patch.area};
      } else {
        const double ca = std::cos(ta), cb = std::cos(tb);
        const double cmid = 0.5 * (ca + cb), chalf = ca - cb;
        const double pmid = pa + 0.5 * dphi;
        for (int a = 0; a < 2; ++a) {
          const double u = cmid + (a == 0 ? -g : g) * chalf;  // cos theta node
          const double theta = std::acos(std::clamp(u, -1.0, 1.0));
          for (int b = 0; b < 2; ++b) {
            const double phi = pmid + (b == 0 ? -g : g) * dphi;
            patch.nodes.push_back(geom.center + from_spherical(r, theta, phi));
            patch.weights.push_back(0.25 * patch.area);
          }
        }
      }
      basis.patches.push_back(std::move(patch));
    }
  }
  return basis;
}

ControlRegion make_annular_sector_grid(std::string name, const Vec3& center,
                                       const SectorBounds& bounds, int n_r, int n_theta,
                                       int n_phi, const SourceGeometry* geom) {
  if (!(bounds.r0 > 0.0)) throw std::invalid_argument("sector: r0 must be > 0");
  if (bounds.r1 < bounds.r0 || bounds.theta1 < bounds.theta0 || bounds.phi1 < bounds.phi0)
    throw std::invalid_argument("sector: bounds must be ordered");
  if (n_r < 1 || n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("sector: grid counts must be >= 1");

  ControlRegion region;
  region.name = std::move(name);
  region.center = center;
  region.bounds = bounds;
  region.n_r = n_r;
  region.n_theta = n_theta;
  region.n_phi = n_phi;

  const auto rs = axis_nodes(bounds.r0, bounds.r1, n_r);
  const auto ts = axis_nodes(bounds.theta0, bounds.theta1, n_theta);
  const auto ps = axis_nodes(bounds.phi0, bounds.phi1, n_phi);
  region.points.reserve(rs.size() * ts.size() * ps.size());
  for (double rv : rs)
    for (double tv : ts)
      for (double pv : ps) region.points.push_back(center + from_spherical(rv, tv, pv));
  region.prescribed = CVector::Zero(static_cast<Eigen::Index>(region.points.size()));

  if (geom) check_region_separation(region, *geom);
  return region;
}

void sphere_surface_grid(const Vec3& center, double radius, int n_lat, int n_lon,
                         std::vector<Vec3>& points, std::vector<Vec3>& normals) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere_surface_grid: radius must be > 0");
  if (n_lat < 1 || n_lon < 1)
    throw std::invalid_argument("sphere_surface_grid: counts must be >= 1");
  points.clear();
  normals.clear();
  points.reserve(static_cast<std::size_t>(n_lat) * n_lon);
  normals.reserve(static_cast<std::size_t>(n_lat) * n_lon);
  const double dphi = 2.0 * kPi / n_lon;
  for (int i = 0; i < n_lat; ++i) {
    const double theta = kPi * (i + 0.5) / n_lat;
    for (int j = 0; j < n_lon; ++j) {
      const Vec3 n = from_spherical(1.0, theta, dphi * (j + 0.5));
      normals.push_back(n);
      points.push_back(center + radius * n);
    }
  }
}

void check_region_separation(const ControlRegion& region, const SourceGeometry& geom) {
  geom.validate();
  auto offending = [&](const Vec3& p) {
    return (p - geom.center).norm() <= geom.physical_radius;
  };
  for (const auto& p : region.points)
    if (offending(p))
      throw GeometryViolation("region '" + region.name +
                              "' touches the physical source ball (grid node)");
  const SectorBounds& b = region.bounds;
  for (double rv : {b.r0, b.r1})
    for (double tv : {b.theta0, b.theta1})
      for (double pv : {b.phi0, b.phi1})
        if (offending(region.center + from_spherical(rv, tv, pv)))
          throw GeometryViolation("region '" + region.name +
                                  "' touches the physical source ball (sector corner)");
}

void validate_farfield_targets(const std::vector<FarFieldTarget>& targets, bool ocean,
                               double depth_h) {
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const auto& t = targets[j];
    if (t.ocean != ocean)
      throw std::invalid_argument("far-field target medium does not match scenario medium");
    if (ocean) {
      if (!(t.z > depth_h && t.z < 0.0))
        throw std::invalid_argument("ocean far-field target: z must lie in (h, 0)");
    } else if (std::abs(t.direction.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("free-space far-field direction must be a unit vector");
    }
    for (std::size_t l = 0; l < j; ++l) {
      const bool same = ocean ? (targets[l].theta == t.theta && targets[l].z == t.z)
                              : ((targets[l].direction - t.direction).norm() < 1e-12);
      if (same) throw std::invalid_argument("far-field directions must be pairwise distinct");
    }
  }
}

std::vector<Vec3> make_farfield_patch_free(const Vec3& dir, double half_width, int n) {
  if (!(half_width > 0.0 && half_width <= kPi / 4.0))
    throw std::invalid_argument("farfield patch: half_width must be in (0, pi/4]");
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("farfield patch: n must be odd so the center is a node");
  if (std::abs(dir.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("farfield patch: direction must be unit length");

  // Orthonormal tangent frame at dir.
  Vec3 seed = std::abs(dir.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 e1 = dir.cross(seed).normalized();
  const Vec3 e2 = dir.cross(e1).normalized();

  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  const int m = n / 2;
  for (int a = -m; a <= m; ++a) {
    const double alpha = half_width * a / std::max(m, 1);
    for (int b = -m; b <= m; ++b) {
      const double beta = half_width * b / std::max(m, 1);
      if (a == 0 && b == 0) {
        out.push_back(dir);  // exact center node
        continue;
      }
      Vec3 v = dir + std::tan(alpha) * e1 + std::tan(beta) * e2;
      out.push_back(v.normalized());
    }
  }
  return out;
}

std::vector<std::pair<double, double>> make_farfield_patch_ocean(double theta, double z,
                                                                 double half_width, int n,
                                                                 double depth_h) {
  if (!(half_width > 0.0 && half_width <= kPi / 4.0))
    throw std::invalid_argument("farfield patch: half_width must be in (0, pi/4]");
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("farfield patch: n must be odd so the center is a node");
  if (!(depth_h < 0.0 && z > depth_h && z < 0.0))
    throw std::invalid_argument("farfield patch: z must lie in (h, 0)");

  // Depth extent scales with the angular half-width as the matching fraction
  // of the water column; rows are clamped strictly inside (h, 0).
  const double zhalf = half_width / kPi * std::abs(depth_h);
  const double zmargin = 1e-6 * std::abs(depth_h);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  const int m = n / 2;
  for (int a = -m; a <= m; ++a) {
    const double th = theta + half_width * a / std::max(m, 1);
    for (int b = -m; b <= m; ++b) {
      double zz = (a == 0 && b == 0) ? z : z + zhalf * b / std::max(m, 1);
      zz = std::clamp(zz, depth_h + zmargin, -zmargin);
      out.emplace_back(a == 0 && b == 0 ? theta : th, zz);
    }
  }
  return out;
}

}  // namespace helm
