#include "reeb/reeb_flow.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>

#include "ode.hpp"
#include "reeb/errors.hpp"

namespace reeb {
namespace {

using detail::State;

Vec dual_velocity(const ConvexBody& body, const Vec& w, Eigen::LLT<Mat>& llt) {
  llt.compute(body.dual_hess(w));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NonPositiveDefinite, "dual Hessian is not positive definite along the flow");
  }
  return llt.solve(apply_j(w));
}

// State layout: w (2n) followed, optionally, by Gamma (column-major 2n x 2n).
struct FlowSystem {
  const ConvexBody* body;
  int n2;
  bool with_gamma;

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    const Eigen::Map<const Vec> w(x.data(), n2);
    Eigen::LLT<Mat> llt;
    const Vec wdot = dual_velocity(*body, w, llt);
    dxdt.resize(x.size());
    std::copy(wdot.data(), wdot.data() + n2, dxdt.begin());
    if (with_gamma) {
      const Eigen::Map<const Mat> g(x.data() + n2, n2, n2);
      // Gamma' = J Hess H(z) Gamma with Hess H(z) = Hess H*(w)^{-1}.
      Mat dg = llt.solve(g);
      for (Eigen::Index c = 0; c < dg.cols(); ++c) dg.col(c) = apply_j(dg.col(c));
      std::copy(dg.data(), dg.data() + dg.size(), dxdt.begin() + n2);
    }
  }
};

struct EnergyGuard {
  const ConvexBody* body;
  int n2;
  double target;
  bool project;
  double max_drift = 0.0;

  void operator()(State& x, double /*t*/) {
    Eigen::Map<Vec> w(x.data(), n2);
    const double e = body->dual_value(w);
    max_drift = std::max(max_drift, std::fabs(e - target) / target);
    if (project && e > 0.0) w *= std::sqrt(target / e);
  }
};

State initial_state(const Vec& w0, bool with_gamma) {
  const auto n2 = w0.size();
  State x(w0.data(), w0.data() + n2);
  if (with_gamma) {
    const Mat id = Mat::Identity(n2, n2);
    x.insert(x.end(), id.data(), id.data() + id.size());
  }
  return x;
}

Vec state_w(const State& x, int n2) { return Eigen::Map<const Vec>(x.data(), n2); }
Mat state_gamma(const State& x, int n2) { return Eigen::Map<const Mat>(x.data() + n2, n2, n2); }

Vec start_dual(const ConvexBody& body, const PointR2n& z0) {
  if (z0.size() != 2 * body.dim()) throw Error(ErrorKind::InvalidBody, "initial point has wrong dimension");
  if (z0.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroArgument, "flow started at the origin");
  return body.legendre_inverse(z0);
}

void check_drift(const EnergyGuard& guard, const FlowOptions& options) {
  if (guard.max_drift > options.drift_tolerance) {
    throw Error(ErrorKind::EnergyDrift, "relative energy drift " + std::to_string(guard.max_drift));
  }
}

Mat gamma_derivative(const ConvexBody& body, const Vec& w, const Mat& g) {
  Eigen::LLT<Mat> llt(body.dual_hess(w));
  Mat dg = llt.solve(g);
  for (Eigen::Index c = 0; c < dg.cols(); ++c) dg.col(c) = apply_j(dg.col(c));
  return dg;
}

struct Propagated {
  Vec w0;
  Vec w;
  Mat gamma;
};

Propagated propagate(const ConvexBody& body, const PointR2n& z, double T, const FlowOptions& options) {
  const int n2 = 2 * body.dim();
  const Vec w0 = start_dual(body, z);
  State x = initial_state(w0, true);
  EnergyGuard guard{&body, n2, body.dual_value(w0), options.project_energy};
  detail::integrate(FlowSystem{&body, n2, true}, x, 0.0, T, options.tolerance, std::ref(guard));
  return {w0, state_w(x, n2), state_gamma(x, n2)};
}

}  // namespace

Trajectory hamiltonian_flow(const ConvexBody& body, const PointR2n& z0, double T, int steps,
                            const FlowOptions& options) {
  if (T < 0.0) throw Error(ErrorKind::InvalidBody, "flow time must be nonnegative");
  steps = std::max(steps, 1);
  const int n2 = 2 * body.dim();
  const Vec w0 = start_dual(body, z0);
  State x = initial_state(w0, false);
  EnergyGuard guard{&body, n2, body.dual_value(w0), options.project_energy};
  const FlowSystem system{&body, n2, false};

  Trajectory traj;
  traj.energy = guard.target;
  traj.times.reserve(steps + 1);
  traj.points.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.points.push_back(z0);
  for (int k = 1; k <= steps; ++k) {
    const double t = T * static_cast<double>(k) / steps;
    detail::integrate(system, x, traj.times.back(), t, options.tolerance, std::ref(guard));
    traj.times.push_back(t);
    traj.points.push_back(body.dual_grad(state_w(x, n2)));
  }
  traj.max_energy_drift = guard.max_drift;
  check_drift(guard, options);
  return traj;
}

Trajectory reeb_flow(const ConvexBody& body, const PointR2n& z0, double T, int steps,
                     const FlowOptions& options) {
  const double h = body.primal_value(z0);
  if (std::fabs(h - 1.0) > 1e-8) {
    throw Error(ErrorKind::OffHypersurface, "H(z0) = " + std::to_string(h) + ", expected 1");
  }
  return hamiltonian_flow(body, z0, T, steps, options);
}

LinearizedFlow flow_with_linearization(const ConvexBody& body, const PointR2n& z0, double T,
                                       const FlowOptions& options) {
  if (T < 0.0) throw Error(ErrorKind::InvalidBody, "flow time must be nonnegative");
  const int n2 = 2 * body.dim();
  const Vec w0 = start_dual(body, z0);
  const FlowSystem system{&body, n2, true};
  EnergyGuard guard{&body, n2, body.dual_value(w0), options.project_energy};
  const long intervals = std::max<long>(1, static_cast<long>(std::ceil(T * options.samples_per_unit)));

  auto grid = std::make_shared<std::vector<State>>();
  grid->reserve(intervals + 1);
  LinearizedFlow out;
  out.trajectory.energy = guard.target;
  SymplecticPath& path = out.path;
  State x = initial_state(w0, true);
  for (long k = 0; k <= intervals; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(intervals);
    if (k > 0) detail::integrate(system, x, path.times.back(), t, options.tolerance, std::ref(guard));
    const Vec w = state_w(x, n2);
    const Mat g = state_gamma(x, n2);
    if (symplectic_defect(g) > options.symplectic_tolerance) {
      throw Error(ErrorKind::SymplecticityLoss,
                  "symplectic defect " + std::to_string(symplectic_defect(g)) + " at t = " + std::to_string(t));
    }
    out.trajectory.times.push_back(t);
    out.trajectory.points.push_back(body.dual_grad(w));
    path.times.push_back(t);
    path.gammas.push_back(g);
    path.derivatives.push_back(gamma_derivative(body, w, g));
    grid->push_back(x);
  }
  out.trajectory.max_energy_drift = guard.max_drift;
  check_drift(guard, options);

  path.generator = "linearized flow of " + body.describe();
  const std::vector<double> times = path.times;
  const double tol = options.tolerance;
  const bool project = options.project_energy;
  const double target = guard.target;
  path.evaluator = [body, grid, times, n2, tol, project, target](double t) {
    auto it = std::lower_bound(times.begin(), times.end(), t);
    std::size_t i = it == times.end() ? times.size() - 1 : static_cast<std::size_t>(it - times.begin());
    if (i > 0 && std::fabs(times[i - 1] - t) < std::fabs(times[i] - t)) --i;
    State y = (*grid)[i];
    EnergyGuard local{&body, n2, target, project};
    detail::integrate(FlowSystem{&body, n2, true}, y, times[i], t, tol, std::ref(local));
    return state_gamma(y, n2);
  };
  return out;
}

SymplecticPath linearized_flow(const ConvexBody& body, const Trajectory& trajectory, double T,
                               const FlowOptions& options) {
  if (trajectory.points.empty()) throw Error(ErrorKind::InvalidBody, "empty trajectory");
  return flow_with_linearization(body, trajectory.points.front(), T, options).path;
}

OrbitRecord find_closed_orbit(const ConvexBody& body, const PointR2n& seed, double period_guess,
                              const ShootingOptions& options) {
  const int n2 = 2 * body.dim();
  if (!(period_guess > 0.0)) throw Error(ErrorKind::ShootingDivergence, "period guess must be positive");
  const Vec seed_field = apply_j(body.primal_grad(seed));

  Vec z = seed;
  double T = period_guess;
  auto residual = [&](const Vec& zz, double tt, Propagated& p) {
    p = propagate(body, zz, tt, options.flow);
    Vec f(n2 + 2);
    f.head(n2) = body.dual_grad(p.w) - zz;
    f(n2) = body.dual_value(p.w0) - 1.0;
    f(n2 + 1) = (zz - seed).dot(seed_field);
    return f;
  };

  Propagated p;
  Vec f = residual(z, T, p);
  double closing = f.head(n2).norm();
  bool converged = false;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (closing <= options.closing_tolerance && std::fabs(f(n2)) <= 1e-12) {
      converged = true;
      break;
    }
    Mat jac = Mat::Zero(n2 + 2, n2 + 1);
    jac.topLeftCorner(n2, n2) = p.gamma - Mat::Identity(n2, n2);
    jac.block(0, n2, n2, 1) = apply_j(p.w);
    jac.block(n2, 0, 1, n2) = p.w0.transpose();
    jac.block(n2 + 1, 0, 1, n2) = seed_field.transpose();
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(jac);
    cod.setThreshold(1e-10);
    const Vec step = -cod.solve(f);

    double alpha = 1.0;
    bool improved = false;
    for (int back = 0; back < 12; ++back, alpha *= 0.5) {
      const Vec z_try = z + alpha * step.head(n2);
      const double t_try = T + alpha * step(n2);
      if (!(t_try > 0.0)) continue;
      Propagated p_try;
      Vec f_try;
      try {
        f_try = residual(z_try, t_try, p_try);
      } catch (const Error&) {
        continue;
      }
      if (f_try.norm() < f.norm() || back == 11) {
        z = z_try;
        T = t_try;
        p = p_try;
        f = f_try;
        improved = true;
        break;
      }
    }
    if (!improved) break;
    closing = f.head(n2).norm();
  }
  if (!converged && !(closing <= options.closing_tolerance && std::fabs(f(n2)) <= 1e-12)) {
    throw Error(ErrorKind::ShootingDivergence,
                "closing error " + std::to_string(closing) + " after " + std::to_string(options.max_iterations) +
                    " Newton iterations");
  }

  OrbitRecord orbit;
  orbit.period = T;
  orbit.initial_point = z;
  orbit.residual = closing;
  const Trajectory traj = reeb_flow(body, z, T, options.output_samples, options.flow);
  orbit.sample_times = traj.times;
  orbit.samples = traj.points;
  for (const auto& pt : traj.points) {
    orbit.energy_error = std::max(orbit.energy_error, std::fabs(body.primal_value(pt) - 1.0));
  }
  return orbit;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const auto n = trajectory.points.empty() ? 0 : trajectory.points.front().size() / 2;
  out << "t";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i << ",y" << i;
  out << "\n";
  out.precision(17);
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << trajectory.times[k];
    for (Eigen::Index c = 0; c < trajectory.points[k].size(); ++c) out << "," << trajectory.points[k](c);
    out << "\n";
  }
}

}  // namespace reeb
