#ifndef HELMCONTROL_REGSOLVE_HPP
#define HELMCONTROL_REGSOLVE_HPP

#include <string>
#include <vector>

#include "helmcontrol/propagator.hpp"
#include "helmcontrol/types.hpp"

namespace helm {

/// Regularized density coefficients plus solve diagnostics.
struct DensitySolution {
  CVector w;
  double alpha = 0.0;
  double residual_norm = 0.0;  // ||A w - b||
  double solution_norm = 0.0;  // ||w||
  int iterations = 0;
  std::string method;          // "normal-equations" or "svd"
  std::vector<std::string> flags;

  bool has_flag(const std::string& f) const;
};

/// Tikhonov solution w = (alpha I + A^H A)^{-1} A^H b by Cholesky (LLT) on
/// the Hermitian positive-definite normal equations. alpha > 0.
DensitySolution tikhonov_solve(const PropagatorSystem& sys, double alpha);

/// Independent solution path through the full SVD filter factors
/// sigma / (sigma^2 + alpha). alpha = 0 gives the plain pseudoinverse solve.
DensitySolution svd_solve(const PropagatorSystem& sys, double alpha);

/// Morozov discrepancy principle: bisects log10(alpha) over
/// [1e-16, 1e4] * sigma_max^2 until | ||A w - b|| - delta | <= tol_rel * delta.
/// Boundary cases are returned at the bracket endpoint with a flag:
/// "zero-data", "target-above-data-norm", "target-below-attainable-residual".
DensitySolution morozov_search(const PropagatorSystem& sys, double delta, double tol_rel = 0.05);

}  // namespace helm

#endif  // HELMCONTROL_REGSOLVE_HPP
