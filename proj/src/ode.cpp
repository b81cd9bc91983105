#include "ode.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "reeb/errors.hpp"

namespace reeb::detail {

namespace odeint = boost::numeric::odeint;

void integrate(const Rhs& f, State& x, double t0, double t1, double tol, const AfterStep& after_step) {
  if (t1 == t0) return;
  const double sign = t1 > t0 ? 1.0 : -1.0;
  const double span = std::fabs(t1 - t0);
  // Reverse time by substitution so the stepper only ever sees s in [0, span].
  auto system = [&](const State& y, State& dydt, double s) {
    f(y, dydt, t0 + sign * s);
    if (sign < 0) {
      for (auto& v : dydt) v = -v;
    }
  };
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
  double s = 0.0;
  double ds = std::min(span, 1e-2);
  constexpr long kMaxAttempts = 50'000'000;
  for (long attempt = 0; s < span; ++attempt) {
    if (attempt > kMaxAttempts) throw Error(ErrorKind::NonConvergence, "ODE step limit exceeded");
    ds = std::min(ds, span - s);
    const double last = ds;
    if (stepper.try_step(system, x, s, ds) == odeint::success) {
      if (span - s < 1e-14 * std::max(1.0, span)) s = span;
      if (after_step) after_step(x, t0 + sign * s);
      // try_step enlarges ds after success; keep the clamp for the final step.
      if (ds <= 0.0) ds = last;
    } else if (ds < 1e-15) {
      throw Error(ErrorKind::NonConvergence, "ODE step size underflow");
    }
  }
}

}  // namespace reeb::detail
