#pragma once

#include <Eigen/Core>
#include <limits>

namespace amplitude_lab {

/// Numerical cutoffs shared by every module.
///
/// Hermiticity and positivity cuts are relative to the scale of the matrix
/// under test: a matrix passes when its defect is below `herm * (1 + scale)`
/// (resp. `psd * (1 + scale)`), where scale is its largest eigenvalue
/// magnitude. Rank decisions count eigenvalues above
/// `rank * d * eps * lambda_max`. `num` is the absolute slack used by the
/// identity checks (KMS defects, reassembly, inequality reports).
struct Tolerances {
  double herm = 1e-10;
  double psd = 1e-10;
  double rank = 1.0;
  double num = 1e-9;

  double herm_cut(double scale) const noexcept { return herm * (1.0 + scale); }
  double psd_cut(double scale) const noexcept { return psd * (1.0 + scale); }
  double rank_cut(Eigen::Index dim, double lambda_max) const noexcept {
    return rank * static_cast<double>(dim < 1 ? 1 : dim) *
           std::numeric_limits<double>::epsilon() * lambda_max;
  }
};

}  // namespace amplitude_lab
