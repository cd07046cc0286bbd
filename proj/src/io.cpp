#include "helmcontrol/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace helm {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

void write_basis_csv(const BasisSet& basis, const std::string& path) {
  auto out = open_out(path);
  out << "id,x,y,z,area,nx,ny,nz\n";
  for (int j = 0; j < basis.size(); ++j) {
    const auto& p = basis.patches[static_cast<std::size_t>(j)];
    out << j << ',' << format_double(p.centroid.x()) << ',' << format_double(p.centroid.y()) << ','
        << format_double(p.centroid.z()) << ',' << format_double(p.area) << ','
        << format_double(p.normal.x()) << ',' << format_double(p.normal.y()) << ','
        << format_double(p.normal.z()) << '\n';
  }
}

void write_region_grid_csv(const ControlRegion& region, const std::string& path) {
  auto out = open_out(path);
  out << "id,x,y,z\n";
  for (int i = 0; i < region.size(); ++i) {
    const auto& p = region.points[static_cast<std::size_t>(i)];
    out << i << ',' << format_double(p.x()) << ',' << format_double(p.y()) << ','
        << format_double(p.z()) << '\n';
  }
}

void write_density_csv(const CVector& density, const std::string& path) {
  auto out = open_out(path);
  out << "id,re_w,im_w\n";
  for (Eigen::Index j = 0; j < density.size(); ++j)
    out << j << ',' << format_double(density(j).real()) << ','
        << format_double(density(j).imag()) << '\n';
}

void write_field_csv(const std::vector<Vec3>& points, const CVector& generated,
                     const CVector* prescribed, const std::string& path) {
  if (static_cast<Eigen::Index>(points.size()) != generated.size())
    throw std::invalid_argument("write_field_csv: size mismatch");
  auto out = open_out(path);
  out << (prescribed ? "x,y,z,re_u,im_u,abs_u,re_f,im_f,rel_err\n" : "x,y,z,re_u,im_u,abs_u\n");
  for (Eigen::Index i = 0; i < generated.size(); ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    const Complex u = generated(i);
    out << format_double(p.x()) << ',' << format_double(p.y()) << ',' << format_double(p.z())
        << ',' << format_double(u.real()) << ',' << format_double(u.imag()) << ','
        << format_double(std::abs(u));
    if (prescribed) {
      const Complex f = (*prescribed)(i);
      out << ',' << format_double(f.real()) << ',' << format_double(f.imag()) << ',';
      if (std::abs(f) > kNullTargetFloor)
        out << format_double(std::abs(u - f) / std::abs(f));
      else
        out << "nan";
    }
    out << '\n';
  }
}

void write_farfield_patch_free_csv(const std::vector<Vec3>& directions, const CVector& values,
                                   const std::string& path) {
  auto out = open_out(path);
  out << "dx,dy,dz,re,im,abs\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const auto& d = directions[static_cast<std::size_t>(i)];
    out << format_double(d.x()) << ',' << format_double(d.y()) << ',' << format_double(d.z())
        << ',' << format_double(values(i).real()) << ',' << format_double(values(i).imag()) << ','
        << format_double(std::abs(values(i))) << '\n';
  }
}

void write_farfield_patch_ocean_csv(const std::vector<std::pair<double, double>>& directions,
                                    const CVector& values, const std::string& path) {
  auto out = open_out(path);
  out << "theta,z,re,im,abs\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const auto& d = directions[static_cast<std::size_t>(i)];
    out << format_double(d.first) << ',' << format_double(d.second) << ','
        << format_double(values(i).real()) << ',' << format_double(values(i).imag()) << ','
        << format_double(std::abs(values(i))) << '\n';
  }
}

void write_boundary_csv(const BoundaryInput& boundary, const std::string& path) {
  auto out = open_out(path);
  out << "id,x,y,z,re_p,im_p,re_v,im_v\n";
  for (Eigen::Index i = 0; i < boundary.pressure.size(); ++i) {
    const auto& p = boundary.points[static_cast<std::size_t>(i)];
    out << i << ',' << format_double(p.x()) << ',' << format_double(p.y()) << ','
        << format_double(p.z()) << ',' << format_double(boundary.pressure(i).real()) << ','
        << format_double(boundary.pressure(i).imag()) << ','
        << format_double(boundary.velocity(i).real()) << ','
        << format_double(boundary.velocity(i).imag()) << '\n';
  }
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace helm
