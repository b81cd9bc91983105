#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reeb/linalg.hpp"

namespace reeb {

/// Sampled path t -> Gamma(t) in Sp(2n).
///
/// `evaluator`, when set, recomputes Gamma at arbitrary t to integrator
/// accuracy (used when crossings are refined). Without it, `at` falls back to
/// cubic Hermite interpolation when derivative samples exist and to linear
/// interpolation otherwise.
struct SymplecticPath {
  std::vector<double> times;
  std::vector<Mat> gammas;
  std::vector<Mat> derivatives;
  std::function<Mat(double)> evaluator;
  std::string generator;

  int dim() const { return gammas.empty() ? 0 : static_cast<int>(gammas.front().rows() / 2); }
  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }
  std::size_t size() const { return times.size(); }

  Mat at(double t) const;
  /// max_k ||Gamma_k^T J Gamma_k - J||_F over the samples.
  double max_symplectic_defect() const;
};

/// Linear matrix ODE Gamma' = K(t) Gamma, Gamma(t0) = g0, sampled on a uniform
/// grid of `samples_per_unit` points per unit time over [t0, t1]. The returned
/// path carries an evaluator that re-integrates from the nearest sample.
SymplecticPath integrate_linear_path(std::function<Mat(double)> generator_matrix, double t0, double t1,
                                     const Mat& g0, int samples_per_unit, double tol,
                                     std::string description);

}  // namespace reeb
