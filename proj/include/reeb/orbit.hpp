#pragma once

#include <optional>
#include <vector>

#include "reeb/linalg.hpp"
#include "reeb/loop.hpp"

namespace reeb {

/// A closed Reeb orbit t -> z(t), t in [0, period], on Y = H^{-1}(1).
struct OrbitRecord {
  double period = 0.0;
  PointR2n initial_point;
  std::optional<LoopCoefficients> loop;  // present when recovered from a Clarke critical point
  double residual = 0.0;                 // critical-point residual (Clarke) or closing error (shooting)
  double energy_error = 0.0;             // max |H(z) - 1| over the samples
  std::vector<double> sample_times;
  std::vector<PointR2n> samples;
  std::optional<int> index;
  std::optional<int> nullity;
};

}  // namespace reeb
