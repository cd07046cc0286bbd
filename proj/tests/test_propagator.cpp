#include "helmcontrol/propagator.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "helmcontrol/scenario.hpp"

using namespace helm;

namespace {

Medium free_space() {
  Medium m;
  m.k = 10.0;
  return m;
}

SourceGeometry paper_source() {
  SourceGeometry g;
  g.fictitious_radius = 0.01;
  g.physical_radius = 0.015;
  return g;
}

SectorBounds paper_sector() {
  return {0.02, 0.03, kPi / 4.0, 3.0 * kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0};
}

std::vector<FarFieldTarget> paper_targets() {
  FarFieldTarget t1, t2;
  t1.direction = Vec3(-1.0, 0.0, 0.0);
  t1.prescribed = Complex(0.01, 0.0);
  t2.direction = Vec3(0.5, 0.5, -std::sqrt(2.0) / 2.0);
  t2.prescribed = Complex(0.0, 0.0);
  return {t1, t2};
}

// The free-space paper system, assembled once and shared across tests.
const PropagatorSystem& paper_system() {
  static const PropagatorSystem sys = [] {
    const BasisSet basis = make_sphere_patch_basis(paper_source(), 13, 18);
    const ControlRegion region =
        make_annular_sector_grid("W1", Vec3::Zero(), paper_sector(), 10, 16, 29);
    return assemble(basis, {region}, paper_targets(), free_space(), {});
  }();
  return sys;
}

}  // namespace

TEST_CASE("paper free-space system dimensions and layout") {
  const PropagatorSystem& sys = paper_system();
  CHECK(sys.rows() == 4642);
  CHECK(sys.cols() == 234);
  CHECK(sys.row_map.size() == 4642);
  CHECK(sys.row_map[0].region == "W1");
  CHECK_FALSE(sys.row_map[0].farfield);
  CHECK(sys.row_map[4640].farfield);
  CHECK(sys.row_map[4641].index == 1);
  // null near prescription + far values
  CHECK(sys.b.head(4640).norm() == 0.0);
  CHECK(sys.b(4640) == Complex(0.01, 0.0));
  CHECK(sys.b(4641) == Complex(0.0, 0.0));
}

TEST_CASE("zero prescriptions give b = 0") {
  const BasisSet basis = make_sphere_patch_basis(paper_source(), 3, 4);
  ControlRegion region = make_annular_sector_grid("W", Vec3::Zero(), paper_sector(), 2, 2, 2);
  FarFieldTarget t;
  t.direction = Vec3::UnitX();
  const PropagatorSystem sys = assemble(basis, {region}, {t}, free_space(), {});
  CHECK(sys.b.norm() == 0.0);
}

TEST_CASE("one-point quadrature entry against a brute-force surface integral") {
  SourceGeometry g = paper_source();
  const BasisSet basis = make_sphere_patch_basis(g, 13, 18);
  const Medium m = free_space();
  const Vec3 point(0.0, -0.025, 0.005);  // paper-scale separation

  // patch 100: integrate phi over the band x slice with a 100x100 rule
  const int jpatch = 100;
  const int il = jpatch / 18, jl = jpatch % 18;
  const double ta = kPi * il / 13.0, tb = kPi * (il + 1) / 13.0;
  const double pa = 2.0 * kPi * jl / 18.0, pb = 2.0 * kPi * (jl + 1) / 18.0;
  Complex brute{0.0, 0.0};
  const int n = 100;
  const double r = g.fictitious_radius;
  for (int a = 0; a < n; ++a) {
    const double u0 = std::cos(ta) + (std::cos(tb) - std::cos(ta)) * (a + 0.5) / n;
    for (int b = 0; b < n; ++b) {
      const double phi = pa + (pb - pa) * (b + 0.5) / n;
      const double theta = std::acos(u0);
      const Vec3 node = g.center + from_spherical(r, theta, phi);
      const double dA = r * r * (std::cos(ta) - std::cos(tb)) / n * (pb - pa) / n;
      brute += dA * phi_free(node, point, m.k);
    }
  }

  const auto& patch = basis.patches[jpatch];
  const Complex one_point = patch.area * phi_free(patch.centroid, point, m.k);
  CHECK(std::abs(one_point - brute) / std::abs(brute) <= 0.005);
}

TEST_CASE("linearity: scaling the prescriptions scales b and leaves A fixed") {
  const BasisSet basis = make_sphere_patch_basis(paper_source(), 3, 4);
  ControlRegion region = make_annular_sector_grid("W", Vec3::Zero(), paper_sector(), 2, 2, 3);
  for (int i = 0; i < region.size(); ++i) region.prescribed(i) = Complex(0.1 * i, -0.05 * i);
  auto targets = paper_targets();

  const PropagatorSystem base = assemble(basis, {region}, targets, free_space(), {});
  ControlRegion scaled = region;
  scaled.prescribed *= Complex(3.0, 0.0);
  auto scaled_targets = targets;
  for (auto& t : scaled_targets) t.prescribed *= Complex(3.0, 0.0);
  const PropagatorSystem three = assemble(basis, {scaled}, scaled_targets, free_space(), {});

  CHECK((three.A - base.A).norm() == 0.0);
  CHECK((three.b - 3.0 * base.b).norm() <= 1e-15 * base.b.norm());
}

TEST_CASE("permutation equivariance of rows") {
  const BasisSet basis = make_sphere_patch_basis(paper_source(), 3, 4);
  ControlRegion region = make_annular_sector_grid("W", Vec3::Zero(), paper_sector(), 2, 2, 2);
  for (int i = 0; i < region.size(); ++i) region.prescribed(i) = Complex(i, 1.0);

  ControlRegion reversed = region;
  std::reverse(reversed.points.begin(), reversed.points.end());
  reversed.prescribed = region.prescribed.reverse().eval();

  const PropagatorSystem a = assemble(basis, {region}, {}, free_space(), {});
  const PropagatorSystem b = assemble(basis, {reversed}, {}, free_space(), {});
  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    CHECK((a.A.row(r) - b.A.row(n - 1 - r)).norm() == 0.0);
    CHECK(a.b(r) == b.b(n - 1 - r));
  }
}

TEST_CASE("multi-threaded assembly is bit-identical to single-threaded") {
  const BasisSet basis = make_sphere_patch_basis(paper_source(), 5, 6);
  ControlRegion region = make_annular_sector_grid("W", Vec3::Zero(), paper_sector(), 3, 4, 5);
  for (int i = 0; i < region.size(); ++i) region.prescribed(i) = Complex(0.01, 0.002 * i);

  AssemblyOptions serial, parallel;
  serial.threads = 1;
  parallel.threads = 4;
  const PropagatorSystem s = assemble(basis, {region}, paper_targets(), free_space(), {}, serial);
  const PropagatorSystem p = assemble(basis, {region}, paper_targets(), free_space(), {}, parallel);
  CHECK((s.A - p.A).norm() == 0.0);
  CHECK((s.b - p.b).norm() == 0.0);
}

TEST_CASE("row weights scale rows and prescriptions together") {
  const BasisSet basis = make_sphere_patch_basis(paper_source(), 3, 4);
  ControlRegion region = make_annular_sector_grid("W", Vec3::Zero(), paper_sector(), 2, 2, 2);
  for (int i = 0; i < region.size(); ++i) region.prescribed(i) = Complex(1.0, -1.0);

  AssemblyOptions weighted;
  weighted.region_weights = {2.5};
  weighted.farfield_weight = 0.5;
  const PropagatorSystem plain = assemble(basis, {region}, paper_targets(), free_space(), {});
  const PropagatorSystem scaled =
      assemble(basis, {region}, paper_targets(), free_space(), {}, weighted);
  const Eigen::Index near = region.size();
  CHECK((scaled.A.topRows(near) - 2.5 * plain.A.topRows(near)).norm() <=
        1e-15 * plain.A.topRows(near).norm());
  CHECK((scaled.A.bottomRows(2) - 0.5 * plain.A.bottomRows(2)).norm() <=
        1e-15 * plain.A.bottomRows(2).norm());
  CHECK(scaled.row_weights(0) == 2.5);
  CHECK(scaled.row_weights(near) == 0.5);
}

TEST_CASE("collocation point inside the fictitious ball is rejected") {
  const BasisSet basis = make_sphere_patch_basis(paper_source(), 3, 4);
  ControlRegion region = make_annular_sector_grid("W", Vec3::Zero(), paper_sector(), 2, 2, 2);
  region.points[0] = Vec3(0.005, 0.0, 0.0);  // inside the fictitious sphere
  CHECK_THROWS_AS(assemble(basis, {region}, {}, free_space(), {}), GeometryViolation);
}

TEST_CASE("ocean assembly demands full propagating-mode coverage") {
  Medium m;
  m.kind = MediumKind::Ocean;
  m.k = 10.0;
  m.depth = -20.0;
  SourceGeometry g = paper_source();
  g.center = Vec3(0.0, 0.0, -10.0);
  const BasisSet basis = make_sphere_patch_basis(g, 3, 4);
  ControlRegion region =
      make_annular_sector_grid("W", g.center, paper_sector(), 2, 2, 2, &g);
  FarFieldTarget t;
  t.ocean = true;
  t.theta = kPi;
  t.z = -10.0;
  const ModeTruncation too_short{32, 50};
  CHECK_THROWS_AS(assemble(basis, {region}, {t}, m, too_short), std::invalid_argument);
  const ModeTruncation enough{70, 50};
  const PropagatorSystem sys = assemble(basis, {region}, {t}, m, enough);
  CHECK(sys.rows() == region.size() + 1);
}

TEST_CASE("condition report") {
  SUBCASE("identity matrix") {
    PropagatorSystem sys;
    sys.A = CMatrix::Identity(6, 6);
    sys.b = CVector::Zero(6);
    sys.row_weights = RVector::Ones(6);
    const ConditionReport rep = condition_report(sys);
    CHECK(rep.sigma_max == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.sigma_min == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.effective_rank == 6);
  }

  SUBCASE("duplicating a row keeps the rank") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    PropagatorSystem sys;
    sys.A = CMatrix(5, 3);
    for (Eigen::Index r = 0; r < 5; ++r)
      for (Eigen::Index c = 0; c < 3; ++c) sys.A(r, c) = Complex(uni(rng), uni(rng));
    sys.A.row(4) = sys.A.row(3);
    sys.b = CVector::Zero(5);
    const ConditionReport rep = condition_report(sys);
    CHECK(rep.effective_rank == 3);
  }

  SUBCASE("paper system is severely ill-posed") {
    const ConditionReport rep = condition_report(paper_system());
    CHECK(rep.sigma_max > 0.0);
    CHECK(rep.sigma_min / rep.sigma_max < 1e-6);
    std::printf("paper free-space system: sigma_max=%.3e sigma_min=%.3e rank=%d\n",
                rep.sigma_max, rep.sigma_min, rep.effective_rank);
  }
}

TEST_CASE("binary system dump round-trips") {
  const BasisSet basis = make_sphere_patch_basis(paper_source(), 3, 4);
  ControlRegion region = make_annular_sector_grid("W", Vec3::Zero(), paper_sector(), 2, 2, 2);
  for (int i = 0; i < region.size(); ++i) region.prescribed(i) = Complex(0.3 * i, -1.0);
  const PropagatorSystem sys = assemble(basis, {region}, paper_targets(), free_space(), {});

  const std::string path = "test_system_dump.bin";
  write_system(sys, path);
  const PropagatorSystem back = read_system(path);
  CHECK(back.A.rows() == sys.A.rows());
  CHECK(back.A.cols() == sys.A.cols());
  CHECK((back.A - sys.A).norm() == 0.0);
  CHECK((back.b - sys.b).norm() == 0.0);
  std::remove(path.c_str());
}
