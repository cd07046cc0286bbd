#include "helmcontrol/greens.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "helmcontrol/specfun.hpp"

namespace helm {

namespace {

constexpr double kCutoffTol = 1e-14;

double horizontal_range(const Vec3& x, const Vec3& y) {
  return std::hypot(x.x() - y.x(), x.y() - y.y());
}

void check_depth(double z, double h, const char* who) {
  const double tol = 1e-9 * std::abs(h);
  if (z > tol || z < h - tol) throw std::invalid_argument(std::string(who) + ": z outside [h, 0]");
}

// sin((2p+1) u) and cos((2p+1) u) walked by the double-angle step; avoids two
// libm calls per mode.
struct OddHarmonics {
  double s, c;        // sin/cos((2p+1) u) for the current p
  double s2, c2;      // sin/cos(2u)
  explicit OddHarmonics(double u) {
    s = std::sin(u);
    c = std::cos(u);
    s2 = 2.0 * s * c;
    c2 = 1.0 - 2.0 * s * s;
  }
  void advance() {
    const double ns = s * c2 + c * s2;
    const double nc = c * c2 - s * s2;
    s = ns;
    c = nc;
  }
};

}  // namespace

void Medium::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("medium: wavenumber k must be > 0");
  if (!(rho > 0.0) || !(c > 0.0))
    throw std::invalid_argument("medium: rho and c must be > 0");
  if (ocean() && !(depth < 0.0))
    throw std::invalid_argument("medium: ocean depth coordinate h must be < 0");
}

Complex ocean_eigenvalue(int p, double k, double h) {
  if (p < 0) throw std::invalid_argument("ocean_eigenvalue: p must be >= 0");
  const double mu = (2.0 * p + 1.0) * kPi / (2.0 * k * std::abs(h));
  const double disc = 1.0 - mu * mu;
  if (std::abs(disc) < kCutoffTol)
    throw NumericalFailure("ocean_eigenvalue: wavenumber sits at the cutoff of mode p=" +
                           std::to_string(p));
  if (disc > 0.0) return {std::sqrt(disc), 0.0};
  return {0.0, std::sqrt(-disc)};
}

double mode_profile(int p, double z, double h) {
  return std::sin((2.0 * p + 1.0) * kPi * z / (2.0 * h));
}

int propagating_mode_count(double k, double h) {
  const double limit = 2.0 * k * std::abs(h) / kPi;  // need 2p+1 < limit
  int n = static_cast<int>(std::floor((limit - 1.0) / 2.0)) + 1;
  if (n < 0) n = 0;
  // keep consistency with ocean_eigenvalue at near-cutoff wavenumbers
  while (n > 0 && 1.0 - std::pow((2.0 * (n - 1) + 1.0) / limit, 2.0) < kCutoffTol) --n;
  return n;
}

Complex phi_free(const Vec3& x, const Vec3& y, double k) {
  const double d = (x - y).norm();
  if (d == 0.0) throw SingularKernel("phi_free: coincident points");
  return std::polar(1.0 / (4.0 * kPi * d), k * d);
}

Complex dphi_dn_free(const Vec3& x, const Vec3& y, const Vec3& n_y, double k) {
  const Vec3 diff = y - x;
  const double d = diff.norm();
  if (d == 0.0) throw SingularKernel("dphi_dn_free: coincident points");
  const Complex phi = std::polar(1.0 / (4.0 * kPi * d), k * d);
  return phi * (Complex(0.0, k) - 1.0 / d) * (diff.dot(n_y) / d);
}

Complex farfield_kernel_free(const Vec3& xhat, const Vec3& y, double k) {
  return std::polar(1.0 / (4.0 * kPi), -k * xhat.dot(y));
}

HankelTable::HankelTable(const Medium& medium, const ModeTruncation& trunc)
    : k_(medium.k), h_(medium.depth), p_max_(trunc.p_max) {
  eigenvalues_.reserve(static_cast<std::size_t>(p_max_));
  for (int p = 0; p < p_max_; ++p) eigenvalues_.push_back(ocean_eigenvalue(p, k_, h_));
}

const std::vector<Complex>& HankelTable::modes(double range) {
  const auto key = std::bit_cast<std::uint64_t>(range);
  auto it = by_range_.find(key);
  if (it != by_range_.end()) return it->second;
  std::vector<Complex> vals(static_cast<std::size_t>(p_max_));
  for (int p = 0; p < p_max_; ++p) {
    const Complex a = eigenvalues_[static_cast<std::size_t>(p)];
    vals[static_cast<std::size_t>(p)] =
        a.imag() == 0.0 ? hankel1_0(k_ * a.real() * range) : hankel1_0_imag(k_ * a.imag() * range);
  }
  return by_range_.emplace(key, std::move(vals)).first->second;
}

Complex green_ocean(const Vec3& x, const Vec3& y, const Medium& medium,
                    const ModeTruncation& trunc, HankelTable* table) {
  if (!medium.ocean()) throw std::invalid_argument("green_ocean: medium is not an ocean");
  medium.validate();
  const double h = medium.depth;
  check_depth(x.z(), h, "green_ocean");
  check_depth(y.z(), h, "green_ocean");
  const double r = horizontal_range(x, y);
  if (r == 0.0) throw SingularKernel("green_ocean: zero horizontal range (on-axis evaluation)");

  const double u = kPi / (2.0 * h);
  OddHarmonics pz(u * x.z());
  OddHarmonics pz0(u * y.z());
  Complex sum{0.0, 0.0};
  if (table) {
    const auto& hank = table->modes(r);
    for (int p = 0; p < trunc.p_max; ++p) {
      sum += pz.s * pz0.s * hank[static_cast<std::size_t>(p)];
      pz.advance();
      pz0.advance();
    }
  } else {
    for (int p = 0; p < trunc.p_max; ++p) {
      const Complex a = ocean_eigenvalue(p, medium.k, h);
      const Complex hp = a.imag() == 0.0 ? hankel1_0(medium.k * a.real() * r)
                                         : hankel1_0_imag(medium.k * a.imag() * r);
      sum += pz.s * pz0.s * hp;
      pz.advance();
      pz0.advance();
    }
  }
  return Complex(0.0, 1.0 / (2.0 * h)) * sum;
}

Complex ocean_farfield_kernel(int p, double theta, double z, const Vec3& y,
                              const Medium& medium, int q_max) {
  if (!medium.ocean()) throw std::invalid_argument("ocean_farfield_kernel: not an ocean medium");
  const Complex a = ocean_eigenvalue(p, medium.k, medium.depth);
  if (a.imag() != 0.0)
    throw std::invalid_argument("ocean_farfield_kernel: mode p=" + std::to_string(p) +
                                " is evanescent");
  const double h = medium.depth;
  const Vec3 cyl = to_cylindrical(y);
  const double rp = cyl.x();     // source horizontal radius
  const double thp = cyl.y();    // source azimuth
  const double zp = cyl.z();     // source depth

  const auto jq = bessel_j_array(q_max, medium.k * a.real() * rp);
  const double dtheta = theta - thp;

  // sum_q eps_q (-i)^q J_q(k a_p r') cos(q (theta - theta'))
  Complex series{0.0, 0.0};
  Complex iq{1.0, 0.0};  // (-i)^q
  for (int q = 0; q <= q_max; ++q) {
    const double eps = (q == 0) ? 1.0 : 2.0;
    series += eps * iq * jq[static_cast<std::size_t>(q)] * std::cos(q * dtheta);
    iq *= Complex(0.0, -1.0);
  }

  const Complex prefix = std::sqrt(2.0 / kPi) * Complex(0.0, 1.0 / (2.0 * h)) *
                         std::polar(1.0, -kPi / 4.0) * mode_profile(p, z, h) *
                         mode_profile(p, zp, h);
  return prefix * series;
}

Complex ocean_g_p(int p, double theta, double z, const CVector& density, const BasisSet& basis,
                  const Medium& medium, const ModeTruncation& trunc) {
  if (density.size() != basis.size())
    throw std::invalid_argument("ocean_g_p: density length must equal basis size");
  Complex sum{0.0, 0.0};
  for (int j = 0; j < basis.size(); ++j) {
    const auto& patch = basis.patches[static_cast<std::size_t>(j)];
    Complex patch_val{0.0, 0.0};
    for (std::size_t n = 0; n < patch.nodes.size(); ++n)
      patch_val += patch.weights[n] *
                   ocean_farfield_kernel(p, theta, z, patch.nodes[n], medium, trunc.q_max);
    sum += density[j] * patch_val;
  }
  return sum;
}

Complex u_infinity_ocean(double theta, double z, const CVector& density, const BasisSet& basis,
                         const Medium& medium, const ModeTruncation& trunc) {
  if (!(z > medium.depth && z < 0.0))
    throw std::invalid_argument("u_infinity_ocean: z must lie in (h, 0)");
  const int n_prop = propagating_mode_count(medium.k, medium.depth);
  Complex sum{0.0, 0.0};
  for (int p = 0; p < n_prop; ++p) sum += ocean_g_p(p, theta, z, density, basis, medium, trunc);
  return sum;
}

}  // namespace helm
