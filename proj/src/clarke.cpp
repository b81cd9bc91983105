#include "reeb/clarke.hpp"

#include <cmath>
#include <complex>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "lbfgs.hpp"
#include "reeb/errors.hpp"

namespace reeb {
namespace {

constexpr double kPi = std::numbers::pi;

int default_nodes(const LoopCoefficients& loop) { return 8 * loop.cutoff(); }

void require_compatible(const ConvexBody& body, const LoopCoefficients& loop) {
  if (body.dim() != loop.dim()) throw Error(ErrorKind::InvalidBody, "loop and body dimensions differ");
}

}  // namespace

double action(const LoopCoefficients& loop) {
  double sum = 0.0;
  for (int k = 1; k <= loop.cutoff(); ++k) {
    sum += loop.mode(k).squaredNorm() / (4 * kPi * k);
    sum -= loop.mode(-k).squaredNorm() / (4 * kPi * k);
  }
  return sum;
}

double dual_energy(const ConvexBody& body, const LoopCoefficients& loop, int nodes) {
  require_compatible(body, loop);
  if (nodes <= 0) nodes = default_nodes(loop);
  double sum = 0.0;
  for (const Vec& v : loop.samples(nodes)) sum += body.dual_value(-apply_j(v));
  return sum / nodes;
}

QuotientEvaluation clarke_quotient(const ConvexBody& body, const LoopCoefficients& loop) {
  require_compatible(body, loop);
  QuotientEvaluation out;
  out.gradient = Vec::Zero(loop.real_size());
  out.action = action(loop);

  const int m = default_nodes(loop);
  const std::vector<Vec> values = loop.samples(m);
  std::vector<Vec> l2_grad(m);
  double energy = 0.0;
  for (int j = 0; j < m; ++j) {
    const Vec w = -apply_j(values[j]);
    energy += body.dual_value(w);
    if (w.squaredNorm() > 0.0) l2_grad[j] = apply_j(body.dual_grad(w));
    else l2_grad[j] = Vec::Zero(w.size());
  }
  out.energy = energy / m;
  if (!(out.action > 0.0)) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = out.energy / out.action;

  const auto spectra = blockwise_forward_dft(l2_grad);
  const int n = loop.dim();
  for (int k = -loop.cutoff(); k <= loop.cutoff(); ++k) {
    if (k == 0) continue;
    const int slot = ((k % m) + m) % m;
    const int off = loop.offset(k);
    for (int i = 0; i < n; ++i) {
      const std::complex<double> dg = spectra[i][slot] / static_cast<double>(m);
      const std::complex<double> c = loop.coefficient(k, i);
      const std::complex<double> da = c / (2 * kPi * k);
      const std::complex<double> dq = (dg - out.value * da) / out.action;
      out.gradient[off + 2 * i] = dq.real();
      out.gradient[off + 2 * i + 1] = dq.imag();
    }
  }
  return out;
}

LoopCoefficients normalize_phase(const LoopCoefficients& loop) {
  const double scale = loop.flat().norm();
  if (scale == 0.0) return loop;
  for (int a = 1; a <= loop.cutoff(); ++a) {
    for (int k : {a, -a}) {
      for (int i = 0; i < loop.dim(); ++i) {
        const std::complex<double> c = loop.coefficient(k, i);
        if (std::abs(c) <= 1e-8 * scale) continue;
        const double s = -std::arg(c) / (2 * kPi * k);
        return loop.time_shifted(s - std::floor(s));
      }
    }
  }
  return loop;
}

OrbitRecord recover_orbit(const ConvexBody& body, const LoopCoefficients& loop, double period,
                          const RecoverOptions& options) {
  require_compatible(body, loop);
  const double g = dual_energy(body, loop);
  if (!(g > 0.0)) throw Error(ErrorKind::ResidualTooLarge, "loop has zero dual energy");
  const LoopCoefficients unit = loop.scaled(1.0 / std::sqrt(g));
  const double a = action(unit);
  if (period <= 0.0) {
    if (!(a > 0.0)) throw Error(ErrorKind::ResidualTooLarge, "loop has non-positive action");
    period = 1.0 / a;
  }

  auto orbit_points = [&](int count, std::vector<Vec>& primitive) {
    const std::vector<Vec> values = unit.samples(count);
    primitive = unit.primitive_samples(count);
    std::vector<Vec> p(count);
    for (int j = 0; j < count; ++j) p[j] = body.dual_grad(-apply_j(values[j]));
    return p;
  };

  const int nodes = default_nodes(unit);
  std::vector<Vec> prim;
  const std::vector<Vec> p = orbit_points(nodes, prim);
  Vec mean = Vec::Zero(2 * body.dim());
  for (const Vec& v : p) mean += v;
  mean /= nodes;
  double sq = 0.0;
  for (int j = 0; j < nodes; ++j) sq += (p[j] - (period * prim[j] + mean)).squaredNorm();
  const double residual = std::sqrt(sq / nodes);
  if (!(residual <= options.residual_tolerance)) {
    std::ostringstream msg;
    msg << "critical-point residual " << residual;
    throw Error(ErrorKind::ResidualTooLarge, msg.str());
  }

  OrbitRecord orbit;
  orbit.period = period;
  orbit.loop = unit;
  orbit.residual = residual;
  const int count = options.samples > 0 ? options.samples : nodes;
  std::vector<Vec> prim_out;
  const std::vector<Vec> pts = count == nodes ? p : orbit_points(count, prim_out);
  orbit.samples.reserve(count);
  orbit.sample_times.reserve(count);
  double energy_error = 0.0;
  const std::vector<Vec> values = unit.samples(count);
  for (int j = 0; j < count; ++j) {
    orbit.sample_times.push_back(period * j / count);
    orbit.samples.push_back(pts[j]);
    // H(grad H*(w)) = H*(w) for 2-homogeneous duals.
    energy_error = std::max(energy_error, std::fabs(body.dual_value(-apply_j(values[j])) - 1.0));
  }
  orbit.energy_error = energy_error;
  orbit.initial_point = pts.front();
  return orbit;
}

IndexResult orbit_index(const ConvexBody& body, const OrbitRecord& orbit, const FlowOptions& flow,
                        const CrossingOptions& crossing) {
  const LinearizedFlow lin = flow_with_linearization(body, orbit.initial_point, orbit.period, flow);
  return morse_index_nullity(lin.path, crossing);
}

namespace {

struct RunOutput {
  RestartOutcome outcome;
  Vec x;
};

RunOutput run_restart(const ConvexBody& body, const SystoleOptions& options, int ordinal) {
  const int n = body.dim();
  const int cutoff = options.mode_cutoff;
  std::seed_seq seq{static_cast<std::uint64_t>(options.seed), static_cast<std::uint64_t>(ordinal)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;

  LoopCoefficients loop(n, cutoff);
  bool positive = false;
  for (int attempt = 0; attempt < 100 && !positive; ++attempt) {
    for (int k : {1, 2}) {
      Vec v(2 * n);
      for (int j = 0; j < 2 * n; ++j) v[j] = normal(rng);
      loop.set_mode(k, v);
    }
    positive = action(loop) > 0.0;
  }
  if (!positive) throw Error(ErrorKind::NoPositiveActionStart, "restart " + std::to_string(ordinal));

  loop = loop.scaled(1.0 / std::sqrt(dual_energy(body, loop)));
  const double target_norm = loop.flat().norm();

  LoopCoefficients work(n, cutoff);
  detail::Objective objective = [&](const Vec& x, Vec& grad) {
    work.flat() = x;
    QuotientEvaluation q = clarke_quotient(body, work);
    grad = std::move(q.gradient);
    return q.value;
  };
  detail::LbfgsOptions lbfgs;
  lbfgs.memory = options.lbfgs_memory;
  lbfgs.max_iterations = options.max_iterations;
  lbfgs.gradient_tolerance = options.gradient_tolerance;
  lbfgs.rescale = [target_norm](Vec& x) {
    const double r = target_norm / x.norm();
    x *= r;
    return r;
  };
  detail::LbfgsResult res = detail::minimize_lbfgs(objective, loop.flat(), lbfgs);

  RunOutput out;
  out.outcome.ordinal = ordinal;
  out.outcome.value = res.value;
  out.outcome.gradient_norm = res.gradient_norm;
  out.outcome.iterations = res.iterations;
  out.outcome.converged = res.gradient_norm <= options.acceptance_tolerance && std::isfinite(res.value);
  out.x = std::move(res.x);
  return out;
}

}  // namespace

SystoleResult minimize_systole(const ConvexBody& body, const SystoleOptions& options) {
  if (options.mode_cutoff < 8) throw Error(ErrorKind::InvalidBody, "mode cutoff must be at least 8");
  if (options.restarts < 1) throw Error(ErrorKind::InvalidBody, "at least one restart is required");

  std::vector<RunOutput> runs;
  runs.reserve(options.restarts);
  if (options.parallel) {
    std::vector<std::future<RunOutput>> jobs;
    for (int r = 0; r < options.restarts; ++r) {
      jobs.push_back(std::async(std::launch::async, run_restart, std::cref(body), std::cref(options), r));
    }
    for (auto& job : jobs) runs.push_back(job.get());
  } else {
    for (int r = 0; r < options.restarts; ++r) runs.push_back(run_restart(body, options, r));
  }

  SystoleResult result;
  int best = -1;
  int best_any = 0;
  for (int r = 0; r < options.restarts; ++r) {
    const RestartOutcome& o = runs[r].outcome;
    result.restarts.push_back(o);
    if (o.value < runs[best_any].outcome.value) best_any = r;
    if (o.converged && (best < 0 || o.value < runs[best].outcome.value)) best = r;
  }
  if (best < 0) {
    const RestartOutcome& o = runs[best_any].outcome;
    std::ostringstream msg;
    msg << "no restart reached gradient norm " << options.acceptance_tolerance;
    throw NonConvergenceError(msg.str(), o.value, o.gradient_norm);
  }

  LoopCoefficients loop(body.dim(), options.mode_cutoff);
  loop.flat() = runs[best].x;
  loop = normalize_phase(loop);
  result.best_restart = best;
  result.orbit = recover_orbit(body, loop);
  result.c0 = result.orbit.period;
  if (options.compute_index) {
    const IndexResult idx = orbit_index(body, result.orbit);
    result.orbit.index = idx.index;
    result.orbit.nullity = idx.nullity;
  }
  return result;
}

}  // namespace reeb
