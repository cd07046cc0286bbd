#ifndef HELMCONTROL_IO_HPP
#define HELMCONTROL_IO_HPP

#include <string>
#include <vector>

#include "helmcontrol/geometry.hpp"
#include "helmcontrol/synthesis.hpp"
#include "helmcontrol/types.hpp"

namespace helm {

/// Shortest exact decimal form of a double ("%.17g" trimmed via round-trip).
std::string format_double(double v);

void write_basis_csv(const BasisSet& basis, const std::string& path);
void write_region_grid_csv(const ControlRegion& region, const std::string& path);
void write_density_csv(const CVector& density, const std::string& path);

/// x,y,z,re_u,im_u,abs_u plus prescription columns when prescribed is given.
void write_field_csv(const std::vector<Vec3>& points, const CVector& generated,
                     const CVector* prescribed, const std::string& path);

void write_farfield_patch_free_csv(const std::vector<Vec3>& directions, const CVector& values,
                                   const std::string& path);
void write_farfield_patch_ocean_csv(const std::vector<std::pair<double, double>>& directions,
                                    const CVector& values, const std::string& path);
void write_boundary_csv(const BoundaryInput& boundary, const std::string& path);

/// FNV-1a 64-bit hash as fixed-width hex, used as the config fingerprint.
std::string fnv1a_hex(const std::string& text);

}  // namespace helm

#endif  // HELMCONTROL_IO_HPP
