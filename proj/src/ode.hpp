#pragma once

// Internal adaptive integrator shared by the flow and index modules.

#include <functional>
#include <vector>

namespace reeb::detail {

using State = std::vector<double>;
using Rhs = std::function<void(const State& x, State& dxdt, double t)>;
using AfterStep = std::function<void(State& x, double t)>;

/// Integrates x' = f(x, t) from t0 to t1 (either direction) with an embedded
/// Fehlberg 7(8) pair under absolute/relative tolerance `tol`. `after_step`
/// runs after every accepted step and may modify the state.
void integrate(const Rhs& f, State& x, double t0, double t1, double tol,
               const AfterStep& after_step = {});

}  // namespace reeb::detail
