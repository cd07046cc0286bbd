#ifndef HELMCONTROL_PROPAGATOR_HPP
#define HELMCONTROL_PROPAGATOR_HPP

#include <string>
#include <vector>

#include "helmcontrol/geometry.hpp"
#include "helmcontrol/greens.hpp"
#include "helmcontrol/types.hpp"

namespace helm {

/// Identifies what a row of the assembled system enforces.
struct RowTag {
  std::string region;  // region name, or "farfield"
  int index = 0;       // point index within the region / direction index
  bool farfield = false;
};

/// Dense discrete propagator: A maps basis coefficients to stacked
/// (near-field collocation values, far-field pattern values); b stacks the
/// prescriptions in the same order. Rows are pre-scaled by row_weights.
struct PropagatorSystem {
  CMatrix A;
  CVector b;
  std::vector<RowTag> row_map;
  RVector row_weights;

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }
};

struct AssemblyOptions {
  std::vector<double> region_weights;  // per region; empty = all ones
  double farfield_weight = 1.0;
  int threads = 1;
};

PropagatorSystem assemble(const BasisSet& basis, const std::vector<ControlRegion>& regions,
                          const std::vector<FarFieldTarget>& targets, const Medium& medium,
                          const ModeTruncation& trunc, const AssemblyOptions& options = {});

struct ConditionReport {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  int effective_rank = 0;  // singular values >= 1e-12 * sigma_max
  double row_norm_min = 0.0, row_norm_max = 0.0;
  double col_norm_min = 0.0, col_norm_max = 0.0;
};

ConditionReport condition_report(const PropagatorSystem& sys);

/// Binary snapshot of (A, b): 16-byte header (magic "HCPM", u32 rows, cols,
/// flags), then row-major float64 re/im pairs of A followed by b.
void write_system(const PropagatorSystem& sys, const std::string& path);
PropagatorSystem read_system(const std::string& path);

}  // namespace helm

#endif  // HELMCONTROL_PROPAGATOR_HPP
