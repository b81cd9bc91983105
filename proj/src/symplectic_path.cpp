#include "reeb/symplectic_path.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ode.hpp"
#include "reeb/errors.hpp"

namespace reeb {
namespace {

detail::State to_state(const Mat& m) { return detail::State(m.data(), m.data() + m.size()); }

Mat from_state(const detail::State& s, Eigen::Index rows) {
  return Eigen::Map<const Mat>(s.data(), rows, rows);
}

std::size_t nearest_index(const std::vector<double>& times, double t) {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return times.size() - 1;
  std::size_t i = static_cast<std::size_t>(it - times.begin());
  if (i > 0 && std::fabs(times[i - 1] - t) < std::fabs(times[i] - t)) --i;
  return i;
}

}  // namespace

Mat SymplecticPath::at(double t) const {
  if (times.empty()) throw Error(ErrorKind::InvalidBody, "empty symplectic path");
  if (evaluator) return evaluator(t);
  if (t <= times.front()) return gammas.front();
  if (t >= times.back()) return gammas.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
  const double h = times[i + 1] - times[i];
  const double s = (t - times[i]) / h;
  if (derivatives.size() == gammas.size()) {
    const double h00 = 2 * s * s * s - 3 * s * s + 1;
    const double h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s;
    const double h11 = s * s * s - s * s;
    return h00 * gammas[i] + h10 * h * derivatives[i] + h01 * gammas[i + 1] + h11 * h * derivatives[i + 1];
  }
  return (1 - s) * gammas[i] + s * gammas[i + 1];
}

double SymplecticPath::max_symplectic_defect() const {
  double worst = 0.0;
  for (const auto& g : gammas) worst = std::max(worst, symplectic_defect(g));
  return worst;
}

SymplecticPath integrate_linear_path(std::function<Mat(double)> generator_matrix, double t0, double t1,
                                     const Mat& g0, int samples_per_unit, double tol,
                                     std::string description) {
  const Eigen::Index rows = g0.rows();
  const auto intervals = std::max<long>(1, static_cast<long>(std::ceil(std::fabs(t1 - t0) * samples_per_unit)));

  auto rhs = [generator_matrix, rows](const detail::State& x, detail::State& dxdt, double t) {
    const Mat g = from_state(x, rows);
    const Mat dg = generator_matrix(t) * g;
    dxdt.assign(dg.data(), dg.data() + dg.size());
  };

  auto samples = std::make_shared<SymplecticPath>();
  samples->times.reserve(intervals + 1);
  samples->gammas.reserve(intervals + 1);
  detail::State x = to_state(g0);
  for (long k = 0; k <= intervals; ++k) {
    const double t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(intervals);
    if (k > 0) detail::integrate(rhs, x, samples->times.back(), t, tol);
    samples->times.push_back(t);
    samples->gammas.push_back(from_state(x, rows));
    samples->derivatives.push_back(generator_matrix(t) * samples->gammas.back());
  }
  // The grid is ascending when t1 > t0; a descending grid is reversed for lookup.
  if (t1 < t0) {
    std::reverse(samples->times.begin(), samples->times.end());
    std::reverse(samples->gammas.begin(), samples->gammas.end());
    std::reverse(samples->derivatives.begin(), samples->derivatives.end());
  }

  SymplecticPath path = *samples;
  path.generator = std::move(description);
  std::shared_ptr<const SymplecticPath> grid = samples;
  path.evaluator = [grid, rhs, rows, tol](double t) {
    const std::size_t i = nearest_index(grid->times, t);
    detail::State y = to_state(grid->gammas[i]);
    detail::integrate(rhs, y, grid->times[i], t, tol);
    return from_state(y, rows);
  };
  return path;
}

}  // namespace reeb
