#ifndef HELMCONTROL_GEOMETRY_HPP
#define HELMCONTROL_GEOMETRY_HPP

#include <string>
#include <utility>
#include <vector>

#include "helmcontrol/types.hpp"

namespace helm {

// Spherical convention: r >= 0, theta = inclination in [0, pi] measured from
// +z, phi = azimuth in [0, 2 pi). Cylindrical: (r, theta, z) with theta the
// azimuth about +z.
Vec3 from_spherical(double r, double theta, double phi);
Vec3 to_spherical(const Vec3& p);  // returns (r, theta, phi)
Vec3 from_cylindrical(double r, double theta, double z);
Vec3 to_cylindrical(const Vec3& p);  // returns (r, theta, z)

/// Concentric fictitious / physical source spheres. The density lives on the
/// fictitious surface; boundary inputs are evaluated on the physical one.
struct SourceGeometry {
  Vec3 center = Vec3::Zero();
  double fictitious_radius = 0.0;
  double physical_radius = 0.0;

  void validate() const;  // throws std::invalid_argument
};

/// One latitude-band x longitude-slice patch of the fictitious sphere,
/// carrying its own quadrature rule (weights sum to the exact patch area).
struct SurfacePatch {
  Vec3 centroid;
  Vec3 normal;
  double area = 0.0;
  std::vector<Vec3> nodes;
  std::vector<double> weights;
};

struct BasisSet {
  SourceGeometry geom;
  int n_lat = 0;
  int n_lon = 0;
  std::vector<SurfacePatch> patches;

  int size() const { return static_cast<int>(patches.size()); }
  /// Largest patch diameter, used as the near-singular evaluation margin.
  double max_patch_diameter() const;
};

/// Partitions the fictitious sphere into n_lat equal-inclination bands times
/// n_lon equal-azimuth slices. Patch areas are the analytic band-slice areas
/// r^2 dphi (cos a - cos b), so they sum to 4 pi r^2 exactly. gauss_per_axis
/// chooses the in-patch rule: 1 = centroid point, 2 = tensor 2x2 Gauss in
/// (cos theta, phi).
BasisSet make_sphere_patch_basis(const SourceGeometry& geom, int n_lat, int n_lon,
                                 int gauss_per_axis = 1);

struct SectorBounds {
  double r0 = 0.0, r1 = 0.0;
  double theta0 = 0.0, theta1 = 0.0;
  double phi0 = 0.0, phi1 = 0.0;
};

/// Collocation grid over an annular spherical sector with per-point
/// prescribed complex field values.
struct ControlRegion {
  std::string name;
  Vec3 center = Vec3::Zero();
  SectorBounds bounds;
  int n_r = 0, n_theta = 0, n_phi = 0;
  std::vector<Vec3> points;
  CVector prescribed;

  int size() const { return static_cast<int>(points.size()); }
};

/// Tensor-product grid: endpoints included per axis, a single-count axis
/// collapses to the interval midpoint. Prescribed values start at zero.
/// When geom is given the sector is checked against the physical ball and a
/// GeometryViolation is thrown on contact.
ControlRegion make_annular_sector_grid(std::string name, const Vec3& center,
                                       const SectorBounds& bounds, int n_r, int n_theta,
                                       int n_phi, const SourceGeometry* geom = nullptr);

/// Distance check (grid nodes and sector corners vs. the closed physical
/// ball). Throws GeometryViolation when the separation assumption fails.
void check_region_separation(const ControlRegion& region, const SourceGeometry& geom);

/// Band-midpoint latitude/longitude grid of a sphere surface with outward
/// unit normals (the centroid layout of make_sphere_patch_basis).
void sphere_surface_grid(const Vec3& center, double radius, int n_lat, int n_lon,
                         std::vector<Vec3>& points, std::vector<Vec3>& normals);

/// Far-field constraint: a free-space unit direction or an ocean (theta, z)
/// pair, with the prescribed complex pattern value.
struct FarFieldTarget {
  bool ocean = false;
  Vec3 direction = Vec3::UnitX();  // free space
  double theta = 0.0;              // ocean azimuth
  double z = 0.0;                  // ocean depth coordinate, in (h, 0)
  Complex prescribed{0.0, 0.0};
};

void validate_farfield_targets(const std::vector<FarFieldTarget>& targets, bool ocean,
                               double depth_h);

/// n x n grid of unit directions centered on dir, extending +-half_width
/// radians in two orthogonal tangent angles. n must be odd so the center
/// node is dir itself.
std::vector<Vec3> make_farfield_patch_free(const Vec3& dir, double half_width, int n);

/// n x n grid in (theta, z) around an ocean direction; z rows are clamped to
/// stay strictly inside (h, 0).
std::vector<std::pair<double, double>> make_farfield_patch_ocean(double theta, double z,
                                                                 double half_width, int n,
                                                                 double depth_h);

}  // namespace helm

#endif  // HELMCONTROL_GEOMETRY_HPP
