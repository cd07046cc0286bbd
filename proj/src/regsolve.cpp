#include "helmcontrol/regsolve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace helm {

namespace {

struct NormalEquations {
  CMatrix gram;  // A^H A
  CVector atb;   // A^H b
};

NormalEquations build_normal_equations(const PropagatorSystem& sys) {
  NormalEquations ne;
  ne.gram = sys.A.adjoint() * sys.A;
  ne.atb = sys.A.adjoint() * sys.b;
  return ne;
}

CVector solve_at(const NormalEquations& ne, double alpha) {
  CMatrix lhs = ne.gram;
  lhs.diagonal().array() += alpha;
  Eigen::LLT<CMatrix> llt(lhs);
  if (llt.info() != Eigen::Success)
    throw NumericalFailure("tikhonov_solve: Cholesky factorization failed (alpha=" +
                           std::to_string(alpha) + ")");
  return llt.solve(ne.atb);
}

void fill_norms(const PropagatorSystem& sys, DensitySolution& sol) {
  sol.residual_norm = (sys.A * sol.w - sys.b).norm();
  sol.solution_norm = sol.w.norm();
  if (!std::isfinite(sol.residual_norm) || !std::isfinite(sol.solution_norm))
    throw NumericalFailure("regsolve: non-finite solution norms");
}

// Largest eigenvalue of the Gram matrix (= sigma_max^2 of A) by a
// deterministic power iteration; only used to scale the alpha bracket.
double gram_spectral_norm(const CMatrix& gram) {
  if (gram.rows() == 0) return 0.0;
  CVector v = CVector::Ones(gram.rows());
  v /= v.norm();
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    CVector nv = gram * v;
    const double nn = nv.norm();
    if (nn == 0.0) return 0.0;
    nv /= nn;
    const double change = std::abs(nn - lambda);
    lambda = nn;
    v = nv;
    if (it > 2 && change < 1e-13 * lambda) break;
  }
  return lambda;
}

}  // namespace

bool DensitySolution::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

DensitySolution tikhonov_solve(const PropagatorSystem& sys, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tikhonov_solve: alpha must be > 0");
  const NormalEquations ne = build_normal_equations(sys);
  DensitySolution sol;
  sol.method = "normal-equations";
  sol.alpha = alpha;
  sol.iterations = 1;
  sol.w = solve_at(ne, alpha);
  fill_norms(sys, sol);
  return sol;
}

DensitySolution svd_solve(const PropagatorSystem& sys, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("svd_solve: alpha must be >= 0");
  Eigen::JacobiSVD<CMatrix> svd(sys.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  CVector utb = svd.matrixU().adjoint() * sys.b;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s = sv(i);
    const double filter = (s * s + alpha) > 0.0 ? s / (s * s + alpha) : 0.0;
    utb(i) *= filter;
  }
  DensitySolution sol;
  sol.method = "svd";
  sol.alpha = alpha;
  sol.iterations = 1;
  sol.w = svd.matrixV() * utb;
  fill_norms(sys, sol);
  return sol;
}

DensitySolution morozov_search(const PropagatorSystem& sys, double delta, double tol_rel) {
  if (!(delta > 0.0)) throw std::invalid_argument("morozov_search: delta must be > 0");
  if (!(tol_rel > 0.0)) throw std::invalid_argument("morozov_search: tol_rel must be > 0");

  const NormalEquations ne = build_normal_equations(sys);
  const double b_norm = sys.b.norm();
  const double sigma2 = gram_spectral_norm(ne.gram);

  DensitySolution sol;
  sol.method = "normal-equations";

  if (b_norm == 0.0 || sigma2 == 0.0) {
    sol.w = CVector::Zero(sys.A.cols());
    sol.alpha = 1e-16 * std::max(sigma2, 1.0);
    sol.flags.push_back("zero-data");
    fill_norms(sys, sol);
    return sol;
  }

  const double log_lo = std::log10(sigma2) - 16.0;
  const double log_hi = std::log10(sigma2) + 4.0;

  auto attempt = [&](double log_alpha) {
    DensitySolution s;
    s.method = "normal-equations";
    s.alpha = std::pow(10.0, log_alpha);
    s.w = solve_at(ne, s.alpha);
    fill_norms(sys, s);
    return s;
  };

  if (delta >= b_norm) {
    sol = attempt(log_hi);
    sol.flags.push_back("target-above-data-norm");
    return sol;
  }

  DensitySolution lo = attempt(log_lo);
  if (lo.residual_norm > delta) {
    lo.flags.push_back("target-below-attainable-residual");
    return lo;
  }
  DensitySolution hi = attempt(log_hi);
  if (hi.residual_norm < delta) {
    hi.flags.push_back("target-above-data-norm");
    return hi;
  }

  // Discrepancy is nondecreasing in alpha: bisect on log10(alpha).
  double a = log_lo, b = log_hi;
  DensitySolution best = lo;
  int iterations = 0;
  for (; iterations < 200; ++iterations) {
    const double mid = 0.5 * (a + b);
    DensitySolution m = attempt(mid);
    best = m;
    if (std::abs(m.residual_norm - delta) <= tol_rel * delta) break;
    if (m.residual_norm > delta)
      b = mid;
    else
      a = mid;
  }
  best.iterations = iterations + 1;
  if (std::abs(best.residual_norm - delta) > tol_rel * delta)
    best.flags.push_back("discrepancy-not-bracketed");
  return best;
}

}  // namespace helm
