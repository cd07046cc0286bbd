#include "helmcontrol/greens.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helmcontrol/specfun.hpp"
#include "oracles.hpp"

using namespace helm;

namespace {

Medium ocean_medium() {
  Medium m;
  m.kind = MediumKind::Ocean;
  m.k = 10.0;
  m.depth = -20.0;
  return m;
}

const ModeTruncation kTrunc{100, 100};

BasisSet ocean_basis() {
  SourceGeometry g;
  g.center = Vec3(0.0, 0.0, -10.0);
  g.fictitious_radius = 0.01;
  g.physical_radius = 0.015;
  return make_sphere_patch_basis(g, 13, 18);
}

CVector random_density(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  CVector w(n);
  for (int j = 0; j < n; ++j) w(j) = Complex(uni(rng), uni(rng));
  return w;
}

}  // namespace

TEST_CASE("phi_free basics") {
  const Vec3 x(1.0, 0.0, 0.0), y(0.0, 0.0, 0.0);
  const double k = 10.0;

  // unit-modulus exponential over 4 pi d
  for (double d : {0.01, 0.5, 3.0}) {
    const Vec3 xx(d, 0.0, 0.0);
    CHECK(std::abs(phi_free(xx, y, k)) == doctest::Approx(1.0 / (4.0 * kPi * d)).epsilon(1e-14));
  }

  // symmetry
  const Vec3 a(0.3, -0.2, 0.9), b(-0.1, 0.4, 0.2);
  CHECK(phi_free(a, b, k) == phi_free(b, a, k));

  // direct formula on an independent evaluator
  const Complex expected = std::polar(1.0 / (4.0 * kPi), 10.0);
  const Complex got = phi_free(x, y, k);
  CHECK(std::abs(got - expected) <= 1e-15);
  CHECK(got.real() == doctest::Approx(-0.0667716).epsilon(1e-4));
  CHECK(got.imag() == doctest::Approx(-0.0432913).epsilon(1e-4));

  CHECK_THROWS_AS(phi_free(x, x, k), SingularKernel);
}

TEST_CASE("dphi_dn_free against a finite-difference oracle") {
  const double k = 10.0;
  const Vec3 x(0.02, -0.01, 0.005);
  const Vec3 y(-0.004, 0.008, 0.001);
  const Vec3 n = Vec3(0.3, -0.5, 0.81).normalized();

  const double d = (x - y).norm();
  const double h = 1e-5 * d;
  auto re = [&](double t) { return phi_free(x, y + t * n, k).real(); };
  auto im = [&](double t) { return phi_free(x, y + t * n, k).imag(); };
  const Complex fd(oracle::derivative5(re, 0.0, h), oracle::derivative5(im, 0.0, h));
  const Complex an = dphi_dn_free(x, y, n, k);
  CHECK(std::abs(an - fd) / std::abs(fd) <= 1e-6);

  // orthogonal normal kills the directional derivative
  const Vec3 diff = (y - x).normalized();
  const Vec3 ortho = diff.cross(Vec3::UnitZ()).normalized();
  CHECK(std::abs(dphi_dn_free(x, y, ortho, k)) <= 1e-12);

  // antisymmetric in the normal
  CHECK(dphi_dn_free(x, y, -n, k) == -an);
}

TEST_CASE("free-space far-field kernel") {
  const double k = 10.0;
  const Vec3 xhat = Vec3(0.5, 0.5, -std::sqrt(2.0) / 2.0);
  const Vec3 y(0.004, -0.006, 0.002);

  CHECK(farfield_kernel_free(xhat, Vec3::Zero(), k) == Complex(1.0 / (4.0 * kPi), 0.0));
  CHECK(std::abs(farfield_kernel_free(xhat, y, k)) ==
        doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));

  // large-R limit of the fundamental solution recovers the kernel
  const double R = 1e4;
  const Complex limit = R * std::polar(1.0, -k * R) * phi_free(R * xhat, y, k);
  const Complex kernel = farfield_kernel_free(xhat, y, k);
  CHECK(std::abs(limit - kernel) / std::abs(kernel) <= 1e-3);
}

TEST_CASE("ocean eigenpairs") {
  const double k = 10.0, h = -20.0;

  CHECK(propagating_mode_count(k, h) == 64);

  double prev = 2.0;
  for (int p = 0; p < 64; ++p) {
    const Complex a = ocean_eigenvalue(p, k, h);
    CHECK(a.imag() == 0.0);
    CHECK(a.real() > 0.0);
    CHECK(a.real() < prev);  // strictly decreasing while real
    prev = a.real();
    const double mu2 = std::pow((2.0 * p + 1.0) * kPi, 2) / (4.0 * k * k * h * h);
    CHECK(std::abs(std::norm(a) + mu2 - 1.0) <= 1e-14);
  }
  for (int p = 64; p < 100; ++p) {
    const Complex a = ocean_eigenvalue(p, k, h);
    CHECK(a.real() == 0.0);
    CHECK(a.imag() > 0.0);  // +i branch: decay at infinity
    const double mu2 = std::pow((2.0 * p + 1.0) * kPi, 2) / (4.0 * k * k * h * h);
    CHECK(std::abs(-a.imag() * a.imag() + mu2 - 1.0) <= 1e-12);
  }

  for (int p : {0, 3, 17}) {
    CHECK(mode_profile(p, 0.0, h) == 0.0);
    CHECK(std::abs(std::abs(mode_profile(p, h, h)) - 1.0) <= 1e-14);
  }
}

TEST_CASE("mode orthogonality by 2000-node quadrature") {
  const double h = -20.0;
  std::vector<double> nodes, weights;
  gauss_legendre(2000, nodes, weights);
  for (int p = 0; p <= 10; ++p) {
    for (int q = p; q <= 10; ++q) {
      double integral = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double z = 0.5 * h * (nodes[i] + 1.0);  // map [-1,1] -> [h,0]
        integral += 0.5 * std::abs(h) * weights[i] * mode_profile(p, z, h) *
                    mode_profile(q, z, h);
      }
      const double expected = (p == q) ? std::abs(h) / 2.0 : 0.0;
      CHECK(std::abs(integral - expected) <= 1e-10);
    }
  }
}

TEST_CASE("ocean Green's function boundary conditions") {
  const Medium m = ocean_medium();
  const Vec3 y(0.002, 0.004, -10.01);

  // surface Dirichlet: exactly zero
  double max_g = 0.0;
  for (double r : {0.05, 0.3, 1.0}) {
    const Complex gs = green_ocean(Vec3(r, 0.0, 0.0), y, m, kTrunc);
    CHECK(gs == Complex(0.0, 0.0));
    const Complex gm = green_ocean(Vec3(r, 0.0, -10.0), y, m, kTrunc);
    max_g = std::max(max_g, std::abs(gm));
  }

  // floor Neumann: one-sided second-order difference
  const double eps = 1e-5;
  for (double r : {0.05, 0.3, 1.0}) {
    auto g_at = [&](double z) { return green_ocean(Vec3(r, 0.0, z), y, m, kTrunc); };
    const Complex d =
        (4.0 * g_at(m.depth + eps) - g_at(m.depth + 2.0 * eps) - 3.0 * g_at(m.depth)) /
        (2.0 * eps);
    CHECK(std::abs(d) <= 1e-6 * max_g);
  }
}

TEST_CASE("ocean Green's function depth reciprocity") {
  const Medium m = ocean_medium();
  const Vec3 x(0.4, 0.1, -3.0), y(0.01, -0.02, -12.5);
  const Complex g1 = green_ocean(x, y, m, kTrunc);
  const Vec3 xs(0.4, 0.1, -12.5), ys(0.01, -0.02, -3.0);
  const Complex g2 = green_ocean(xs, ys, m, kTrunc);
  CHECK(std::abs(g1 - g2) <= 1e-13 * std::abs(g1));
}

TEST_CASE("Helmholtz residual of the kernels (7-point Laplacian)") {
  const double k = 10.0;
  const double step = 1e-3;

  auto laplacian_plus_k2 = [&](auto&& f, const Vec3& x) {
    Complex lap{0.0, 0.0};
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e = Vec3::Zero();
      e(axis) = step;
      lap += f(x + e) - 2.0 * f(x) + f(x - e);
    }
    return lap / (step * step) + k * k * f(x);
  };

  SUBCASE("free space") {
    const Vec3 y(0.0, 0.0, 0.0);
    auto f = [&](const Vec3& x) { return phi_free(x, y, k); };
    for (const Vec3& x : {Vec3(0.15, 0.05, -0.02), Vec3(0.4, -0.3, 0.25)}) {
      CHECK(std::abs(laplacian_plus_k2(f, x)) <= 1e-2 * k * k * std::abs(f(x)));
    }
  }

  SUBCASE("ocean") {
    const Medium m = ocean_medium();
    const Vec3 y(0.002, 0.001, -10.005);
    auto f = [&](const Vec3& x) { return green_ocean(x, y, m, kTrunc); };
    for (const Vec3& x : {Vec3(0.5, 0.2, -9.5), Vec3(1.2, -0.4, -6.0)}) {
      CHECK(std::abs(laplacian_plus_k2(f, x)) <= 1e-2 * k * k * std::abs(f(x)));
    }
  }
}

TEST_CASE("green_ocean input guards") {
  const Medium m = ocean_medium();
  const Vec3 y(0.002, 0.001, -10.0);
  CHECK_THROWS_AS(green_ocean(Vec3(0.0, 0.0, -5.0), Vec3(0.0, 0.0, -10.0), m, kTrunc),
                  SingularKernel);                        // on-axis: r = 0
  CHECK_THROWS_AS(green_ocean(Vec3(0.1, 0.0, 1.0), y, m, kTrunc), std::invalid_argument);
  CHECK_THROWS_AS(green_ocean(Vec3(0.1, 0.0, -25.0), y, m, kTrunc), std::invalid_argument);
  Medium fs;
  fs.k = 10.0;
  CHECK_THROWS_AS(green_ocean(Vec3(0.1, 0.0, -5.0), y, fs, kTrunc), std::invalid_argument);
}

TEST_CASE("Hankel memo hits are bit-identical to recomputation") {
  const Medium m = ocean_medium();
  HankelTable table(m, kTrunc);
  const Vec3 y(0.003, -0.002, -10.004);
  for (const Vec3& x : {Vec3(0.025, 0.01, -9.99), Vec3(0.025, 0.01, -11.2)}) {
    const Complex with_table = green_ocean(x, y, m, kTrunc, &table);
    const Complex plain = green_ocean(x, y, m, kTrunc);
    CHECK(with_table == plain);
  }
  // second pass through the table reuses entries
  for (const Vec3& x : {Vec3(0.025, 0.01, -9.99), Vec3(0.025, 0.01, -11.2)}) {
    CHECK(green_ocean(x, y, m, kTrunc, &table) == green_ocean(x, y, m, kTrunc));
  }
}

TEST_CASE("modal far-field amplitudes") {
  const Medium m = ocean_medium();
  const BasisSet basis = ocean_basis();

  SUBCASE("zero density gives zero") {
    const CVector zero = CVector::Zero(basis.size());
    CHECK(ocean_g_p(3, 1.0, -10.0, zero, basis, m, kTrunc) == Complex(0.0, 0.0));
    CHECK(u_infinity_ocean(1.0, -10.0, zero, basis, m, kTrunc) == Complex(0.0, 0.0));
  }

  SUBCASE("evanescent mode is rejected") {
    const CVector w = random_density(basis.size(), 3);
    CHECK_THROWS_AS(ocean_g_p(64, 1.0, -10.0, w, basis, m, kTrunc), std::invalid_argument);
  }

  SUBCASE("azimuthal series tail is negligible for the source size") {
    // J_q(k a_p r') with k a_p r' <= 0.1: the tail terms die factorially.
    const double x = 0.1;
    const auto j = bessel_j_array(kTrunc.q_max, x);
    double max_term = 0.0;
    for (int q = 0; q <= kTrunc.q_max; ++q)
      max_term = std::max(max_term, (q == 0 ? 1.0 : 2.0) * std::abs(j[q]));
    const double tail = 2.0 * std::abs(j[kTrunc.q_max]);
    CHECK(tail <= 1e-10 * max_term);
  }

  SUBCASE("modal projection of the forward field reproduces g_p") {
    const CVector w = random_density(basis.size(), 17);
    const double r = 1e3, theta = 1.0, h = m.depth;
    const double zstar = h / 2.0;

    std::vector<double> nodes, weights;
    gauss_legendre(400, nodes, weights);
    std::vector<Vec3> pts;
    pts.reserve(nodes.size());
    for (double t : nodes)
      pts.push_back(from_cylindrical(r, theta, 0.5 * h * (t + 1.0)));

    // evaluate the field once over the depth scan
    HankelTable table(m, kTrunc);
    CVector u(static_cast<Eigen::Index>(pts.size()));
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      Complex sum{0.0, 0.0};
      for (int j = 0; j < basis.size(); ++j) {
        const auto& patch = basis.patches[static_cast<std::size_t>(j)];
        sum += w(j) * patch.weights[0] *
               green_ocean(pts[static_cast<std::size_t>(i)], patch.nodes[0], m, kTrunc, &table);
      }
      u(i) = sum;
    }

    for (int p : {0, 2, 5}) {
      const Complex a = ocean_eigenvalue(p, m.k, h);
      Complex proj{0.0, 0.0};
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        const double z = 0.5 * h * (nodes[static_cast<std::size_t>(i)] + 1.0);
        proj += 0.5 * std::abs(h) * weights[static_cast<std::size_t>(i)] * u(i) *
                mode_profile(p, z, h);
      }
      const Complex amp = std::sqrt(m.k * a.real() * r) *
                          std::polar(1.0, -m.k * a.real() * r) * (2.0 / std::abs(h)) * proj;
      const Complex gp = ocean_g_p(p, theta, zstar, w, basis, m, kTrunc);
      const Complex projected_gp = amp * mode_profile(p, zstar, h);
      CHECK(std::abs(projected_gp - gp) / std::abs(gp) <= 0.01);
    }
  }
}

TEST_CASE("mode-sum truncation stability at range") {
  const Medium m = ocean_medium();
  const ModeTruncation longer{150, 100};
  const Vec3 y(0.006, 0.004, -10.006);
  // beyond ~2 m every evanescent tail term has died and the sum is converged
  for (double r : {2.0, 5.0, 20.0}) {
    const Vec3 x(r, -0.3, -8.0);
    const Complex g100 = green_ocean(x, y, m, kTrunc);
    const Complex g150 = green_ocean(x, y, m, longer);
    CHECK(std::abs(g150 - g100) <= 1e-6 * std::abs(g100));
  }
}
