#ifndef HELMCONTROL_SYNTHESIS_HPP
#define HELMCONTROL_SYNTHESIS_HPP

#include <string>
#include <vector>

#include "helmcontrol/geometry.hpp"
#include "helmcontrol/greens.hpp"
#include "helmcontrol/types.hpp"

namespace helm {

struct FieldSample {
  Vec3 point;
  Complex value;
};

/// Single-layer field of the density at the given points. Points closer to
/// the fictitious sphere than one patch diameter produce a near-singular
/// warning (appended to *warnings if provided), not an error.
CVector eval_field(const CVector& density, const BasisSet& basis, const std::vector<Vec3>& points,
                   const Medium& medium, const ModeTruncation& trunc, int threads = 1,
                   std::vector<std::string>* warnings = nullptr);

/// Pressure and normal velocity on a latitude/longitude grid of the physical
/// source sphere. Velocity carries the -i/(rho c k) normalization; the normal
/// derivative is analytic in free space and a radial central difference
/// (step 1e-4 * physical radius) in the ocean.
struct BoundaryInput {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  CVector pressure;
  CVector velocity;
};

BoundaryInput boundary_inputs(const CVector& density, const BasisSet& basis, int n_lat, int n_lon,
                              const Medium& medium, const ModeTruncation& trunc, int threads = 1);

/// Free-space far-field pattern u_inf(xhat) of the density (unit |xhat|).
Complex u_infinity_free(const CVector& density, const BasisSet& basis, const Vec3& xhat,
                        double k);

struct PowerReport {
  double p_ave = 0.0;    // watts
  double level_db = 0.0; // 10 log10(p_ave / 1e-12)
  double radius = 0.0;
  int n_theta = 0, n_phi = 0;
};

/// Average radiated power P = 1/2 oint Im[conj(u) (grad u . n)] dS (the
/// time-averaged outward flux under the e^{-i omega t} convention) over the
/// sphere of the given radius about the source center. Gauss-Legendre in
/// cos(theta), uniform in phi; counts must be >= 16. In the ocean the sphere
/// must stay inside the water column.
PowerReport radiated_power(const CVector& density, const BasisSet& basis, double radius,
                           int n_theta, int n_phi, const Medium& medium,
                           const ModeTruncation& trunc, int threads = 1);

// Relative errors are only formed where |prescribed| exceeds this floor;
// smaller prescriptions are treated as null targets.
inline constexpr double kNullTargetFloor = 1e-12;

struct RegionErrorMetrics {
  double max_rel_error = 0.0;  // over points with |prescribed| > floor
  double max_abs_field = 0.0;  // null-target metric: max |generated|
  double l2_error = 0.0;       // || generated - prescribed ||_2
  bool has_rel = false;
};

struct DirectionError {
  Complex generated{0.0, 0.0};
  Complex prescribed{0.0, 0.0};
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool has_rel = false;
};

struct ErrorReport {
  std::vector<std::string> region_names;
  std::vector<RegionErrorMetrics> regions;
  std::vector<DirectionError> directions;
};

RegionErrorMetrics region_error_metrics(const CVector& generated, const CVector& prescribed);

ErrorReport error_report(const std::vector<std::string>& region_names,
                         const std::vector<CVector>& generated_per_region,
                         const std::vector<CVector>& prescribed_per_region,
                         const std::vector<Complex>& generated_far,
                         const std::vector<Complex>& prescribed_far);

/// The same sector re-gridded with every axis shifted by offset_fraction of
/// one grid step (the last node moves backward so all nodes stay inside the
/// bounds; single-node axes keep their midpoint). Prescribed values reset to
/// zero. offset_fraction must lie in (0, 0.5].
ControlRegion stability_offset_grid(const ControlRegion& region, double offset_fraction);

}  // namespace helm

#endif  // HELMCONTROL_SYNTHESIS_HPP
