#ifndef HELMCONTROL_GREENS_HPP
#define HELMCONTROL_GREENS_HPP

#include <unordered_map>
#include <vector>

#include "helmcontrol/geometry.hpp"
#include "helmcontrol/types.hpp"

namespace helm {

enum class MediumKind { FreeSpace, Ocean };

struct Medium {
  MediumKind kind = MediumKind::FreeSpace;
  double k = 0.0;       // wavenumber, rad/m
  double rho = 1000.0;  // density, kg/m^3
  double c = 1500.0;    // sound speed, m/s
  double depth = 0.0;   // ocean floor coordinate h < 0 (unused in free space)

  bool ocean() const { return kind == MediumKind::Ocean; }
  void validate() const;
};

/// Mode-sum / azimuthal-series truncation orders for the ocean kernels.
struct ModeTruncation {
  int p_max = 100;  // number of modes kept in the Green's function sum
  int q_max = 100;  // azimuthal order cap in the far-field expansion
};

/// Modal eigenvalue a_p = sqrt(1 - (2p+1)^2 pi^2 / (4 k^2 h^2)): real for
/// propagating modes, +i |a_p| for evanescent ones (the branch that decays
/// as r -> infinity). Throws NumericalFailure at a modal cutoff.
Complex ocean_eigenvalue(int p, double k, double h);

/// Vertical profile phi_p(z) = sin((2p+1) pi z / (2h)).
double mode_profile(int p, double z, double h);

/// Number of propagating modes, #{p >= 0 : (2p+1) pi / (2 k |h|) < 1}.
int propagating_mode_count(double k, double h);

/// Free-space fundamental solution e^{ik|x-y|} / (4 pi |x-y|).
Complex phi_free(const Vec3& x, const Vec3& y, double k);

/// Normal derivative of phi_free with respect to the second argument:
/// grad_y phi(x, y) . n_y. Requires |n_y| = 1.
Complex dphi_dn_free(const Vec3& x, const Vec3& y, const Vec3& n_y, double k);

/// Far-field kernel e^{-ik xhat . y} / (4 pi). xhat must be a unit vector.
Complex farfield_kernel_free(const Vec3& xhat, const Vec3& y, double k);

/// Caches per-range vectors of H0^(1)(k a_p r) for p = 0 .. p_max-1. Hits are
/// bit-identical to recomputation; keep one instance per thread.
class HankelTable {
 public:
  HankelTable(const Medium& medium, const ModeTruncation& trunc);
  const std::vector<Complex>& modes(double range);

 private:
  double k_;
  double h_;
  int p_max_;
  std::vector<Complex> eigenvalues_;
  std::unordered_map<std::uint64_t, std::vector<Complex>> by_range_;
};

/// Normal-mode Green's function of the finite-depth ocean,
///   G(x, y) = (i / 2h) sum_p phi_p(z) phi_p(z0) H0^(1)(k a_p r),
/// truncated at trunc.p_max terms; r is the horizontal range. table, when
/// given, memoizes the per-mode Hankel factors across calls sharing r.
Complex green_ocean(const Vec3& x, const Vec3& y, const Medium& medium,
                    const ModeTruncation& trunc, HankelTable* table = nullptr);

/// Modal far-field kernel: the contribution of a unit point density at
/// source point y to g_p(theta, z), i.e.
///   sqrt(2/pi) sum_q e^{-i(q+1/2)pi/2} alpha_qp(z, theta; y)
/// with the azimuthal series truncated at q_max. p must be propagating.
Complex ocean_farfield_kernel(int p, double theta, double z, const Vec3& y,
                              const Medium& medium, int q_max);

/// Modal far-field amplitude g_p of the single layer with the given density
/// coefficients (one per basis patch).
Complex ocean_g_p(int p, double theta, double z, const CVector& density, const BasisSet& basis,
                  const Medium& medium, const ModeTruncation& trunc);

/// Ocean far-field pattern u_inf(theta, z) = sum of g_p over all propagating
/// modes. Requires z in (h, 0).
Complex u_infinity_ocean(double theta, double z, const CVector& density, const BasisSet& basis,
                         const Medium& medium, const ModeTruncation& trunc);

}  // namespace helm

#endif  // HELMCONTROL_GREENS_HPP
