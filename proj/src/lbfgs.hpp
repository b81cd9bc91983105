#pragma once

// Limited-memory BFGS with a strong-Wolfe line search. Objectives return
// +infinity outside their domain; the line search treats that as a rejected
// trial.

#include <functional>

#include "reeb/linalg.hpp"

namespace reeb::detail {

using Objective = std::function<double(const Vec& x, Vec& gradient)>;

struct LbfgsOptions {
  int memory = 12;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-10;
  // Called after every accepted step; may rescale x in place and returns the
  // factor rho with x_new = rho * x_old. Only valid for 0-homogeneous
  // objectives, where grad f(rho x) = grad f(x) / rho.
  std::function<double(Vec& x)> rescale;
};

struct LbfgsResult {
  Vec x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool reached_tolerance = false;
};

LbfgsResult minimize_lbfgs(const Objective& f, Vec x0, const LbfgsOptions& options);

}  // namespace reeb::detail
