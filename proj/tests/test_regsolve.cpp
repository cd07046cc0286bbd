#include "helmcontrol/regsolve.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "doctest.h"

using namespace helm;

namespace {

PropagatorSystem random_system(Eigen::Index rows, Eigen::Index cols, unsigned seed,
                               double smallest_scale = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  PropagatorSystem sys;
  sys.A = CMatrix(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) sys.A(r, c) = Complex(uni(rng), uni(rng));
  // shrink the last column to make the system less isotropic
  sys.A.col(cols - 1) *= smallest_scale;
  sys.b = CVector(rows);
  for (Eigen::Index r = 0; r < rows; ++r) sys.b(r) = Complex(uni(rng), uni(rng));
  sys.row_weights = RVector::Ones(rows);
  return sys;
}

PropagatorSystem diag_system() {
  PropagatorSystem sys;
  sys.A = CMatrix::Zero(2, 2);
  sys.A(0, 0) = 1.0;
  sys.A(1, 1) = 0.1;
  sys.b = CVector(2);
  sys.b << Complex(1.0, 0.0), Complex(1.0, 0.0);
  sys.row_weights = RVector::Ones(2);
  return sys;
}

double sigma_max_of(const PropagatorSystem& sys) {
  return Eigen::JacobiSVD<CMatrix>(sys.A).singularValues()(0);
}

}  // namespace

TEST_CASE("zero data gives the zero solution") {
  PropagatorSystem sys = random_system(10, 4, 1);
  sys.b.setZero();
  const DensitySolution sol = tikhonov_solve(sys, 1e-4);
  CHECK(sol.solution_norm == 0.0);
  CHECK(sol.residual_norm == 0.0);
}

TEST_CASE("normal-equations residual invariant") {
  const PropagatorSystem sys = random_system(30, 12, 2);
  for (double alpha : {1e-8, 1e-3, 1.0}) {
    const DensitySolution sol = tikhonov_solve(sys, alpha);
    const CMatrix gram = sys.A.adjoint() * sys.A;
    const CVector atb = sys.A.adjoint() * sys.b;
    CVector lhs = gram * sol.w + alpha * sol.w;
    CHECK((lhs - atb).norm() <= 1e-10 * atb.norm());
  }
}

TEST_CASE("dominant-alpha asymptote") {
  const PropagatorSystem sys = random_system(25, 8, 3);
  const double s2 = sigma_max_of(sys);
  const double alpha = 1e8 * s2 * s2;
  const DensitySolution sol = tikhonov_solve(sys, alpha);
  const CVector limit = (sys.A.adjoint() * sys.b) / alpha;
  CHECK((sol.w - limit).norm() <= 1e-6 * limit.norm());
}

TEST_CASE("tikhonov and svd routes agree on a random 20x8 system") {
  const PropagatorSystem sys = random_system(20, 8, 4);
  const DensitySolution t = tikhonov_solve(sys, 1e-3);
  const DensitySolution s = svd_solve(sys, 1e-3);
  CHECK((t.w - s.w).norm() <= 1e-10 * s.w.norm());
  CHECK(t.method == "normal-equations");
  CHECK(s.method == "svd");
}

TEST_CASE("svd_solve at alpha = 0 solves a well-conditioned square system") {
  const PropagatorSystem sys = random_system(8, 8, 5);
  const DensitySolution sol = svd_solve(sys, 0.0);
  CHECK((sys.A * sol.w - sys.b).norm() <= 1e-10 * sys.b.norm());
}

TEST_CASE("filter factors are bounded by 1/(2 sqrt(alpha))") {
  const PropagatorSystem sys = random_system(15, 6, 6, 1e-5);
  Eigen::JacobiSVD<CMatrix> svd(sys.A);
  for (double alpha : {1e-10, 1e-4, 1e2}) {
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      const double s = svd.singularValues()(i);
      CHECK(s / (s * s + alpha) <= 1.0 / (2.0 * std::sqrt(alpha)) + 1e-15);
    }
  }
}

TEST_CASE("morozov: target above the data norm") {
  PropagatorSystem sys = random_system(12, 5, 7);
  const double delta = 2.0 * sys.b.norm();
  const DensitySolution sol = morozov_search(sys, delta);
  CHECK(sol.has_flag("target-above-data-norm"));
  CHECK(sol.solution_norm <= 1e-3 * sys.b.norm());
}

TEST_CASE("morozov: zero data") {
  PropagatorSystem sys = random_system(12, 5, 8);
  sys.b.setZero();
  const DensitySolution sol = morozov_search(sys, 0.5);
  CHECK(sol.has_flag("zero-data"));
  CHECK(sol.solution_norm == 0.0);
}

TEST_CASE("morozov on the diagonal system against a grid-scan oracle") {
  const PropagatorSystem sys = diag_system();
  const double delta = 0.5;
  const DensitySolution sol = morozov_search(sys, delta, 0.01);
  CHECK(std::abs(sol.residual_norm - delta) <= 0.01 * delta);

  // scalar discrepancy: r(alpha)^2 = (alpha/(1+alpha))^2 + (alpha/(0.01+alpha))^2
  auto discrepancy = [](double alpha) {
    const double r1 = alpha / (1.0 + alpha);
    const double r2 = alpha / (0.01 + alpha);
    return std::sqrt(r1 * r1 + r2 * r2);
  };
  double best_alpha = 0.0, best_gap = 1e300;
  for (int i = 0; i < 1000000; ++i) {
    const double alpha = std::pow(10.0, -8.0 + 10.0 * i / 999999.0);
    const double gap = std::abs(discrepancy(alpha) - delta);
    if (gap < best_gap) {
      best_gap = gap;
      best_alpha = alpha;
    }
  }
  CHECK(sol.alpha == doctest::Approx(best_alpha).epsilon(0.05));
  CHECK(discrepancy(sol.alpha) == doctest::Approx(sol.residual_norm).epsilon(1e-10));
}

TEST_CASE("tikhonov path monotonicity in alpha") {
  const PropagatorSystem sys = random_system(40, 10, 9, 1e-4);
  double prev_residual = -1.0;
  double prev_norm = 1e300;
  for (double alpha = 1e-12; alpha <= 1e2; alpha *= 10.0) {
    const DensitySolution sol = tikhonov_solve(sys, alpha);
    CHECK(sol.residual_norm >= prev_residual - 1e-12);
    CHECK(sol.solution_norm <= prev_norm + 1e-12);
    prev_residual = sol.residual_norm;
    prev_norm = sol.solution_norm;
  }
}

TEST_CASE("scaling covariance: b -> lambda b scales w by lambda") {
  PropagatorSystem sys = random_system(18, 7, 10);
  const double alpha = 3e-4;
  const DensitySolution base = tikhonov_solve(sys, alpha);
  PropagatorSystem scaled = sys;
  scaled.b *= Complex(-2.5, 0.0);
  const DensitySolution two = tikhonov_solve(scaled, alpha);
  CHECK((two.w + 2.5 * base.w).norm() <= 1e-13 * base.w.norm());
}

TEST_CASE("input validation") {
  const PropagatorSystem sys = random_system(6, 3, 11);
  CHECK_THROWS_AS(tikhonov_solve(sys, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(tikhonov_solve(sys, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(svd_solve(sys, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(morozov_search(sys, 0.0), std::invalid_argument);
}
