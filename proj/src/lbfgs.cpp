#include "lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>

namespace reeb::detail {
namespace {

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.9;

struct Trial {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;
  Vec x;
  Vec gradient;
};

struct LineSearch {
  const Objective& f;
  const Vec& x;
  const Vec& direction;
  double f0;
  double slope0;

  Trial eval(double alpha) const {
    Trial t;
    t.alpha = alpha;
    t.x = x + alpha * direction;
    t.gradient.resize(x.size());
    t.value = f(t.x, t.gradient);
    t.slope = std::isfinite(t.value) ? t.gradient.dot(direction) : std::numeric_limits<double>::infinity();
    return t;
  }

  bool sufficient(const Trial& t) const {
    if (!std::isfinite(t.value)) return false;
    if (t.value <= f0 + kC1 * t.alpha * slope0) return true;
    // Approximate Wolfe: the decrease is below rounding but the slope has flattened.
    return t.value <= f0 + 1e-14 * std::fabs(f0) && t.slope <= (2 * 0.1 - 1) * slope0;
  }

  bool curvature(const Trial& t) const { return std::fabs(t.slope) <= -kC2 * slope0; }

  std::optional<Trial> zoom(Trial lo, Trial hi) const {
    for (int iter = 0; iter < 40; ++iter) {
      double alpha = 0.5 * (lo.alpha + hi.alpha);
      if (std::isfinite(hi.value) && std::isfinite(lo.value)) {
        // Cubic interpolation, safeguarded into the middle 80% of the bracket.
        const double d1 = lo.slope + hi.slope - 3 * (lo.value - hi.value) / (lo.alpha - hi.alpha);
        const double disc = d1 * d1 - lo.slope * hi.slope;
        if (disc >= 0.0) {
          const double d2 = std::copysign(std::sqrt(disc), hi.alpha - lo.alpha);
          const double cubic =
              hi.alpha - (hi.alpha - lo.alpha) * (hi.slope + d2 - d1) / (hi.slope - lo.slope + 2 * d2);
          const double a = std::min(lo.alpha, hi.alpha);
          const double b = std::max(lo.alpha, hi.alpha);
          if (std::isfinite(cubic)) alpha = std::clamp(cubic, a + 0.1 * (b - a), b - 0.1 * (b - a));
        }
      }
      Trial t = eval(alpha);
      if (!sufficient(t) || t.value >= lo.value) {
        hi = std::move(t);
      } else {
        if (curvature(t)) return t;
        if (t.slope * (hi.alpha - lo.alpha) >= 0) hi = lo;
        lo = std::move(t);
      }
      if (std::fabs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, lo.alpha)) break;
    }
    if (lo.alpha > 0.0 && lo.value < f0) return lo;
    return std::nullopt;
  }

  std::optional<Trial> run(double alpha0) const {
    Trial prev;
    prev.alpha = 0.0;
    prev.value = f0;
    prev.slope = slope0;
    prev.x = x;
    double alpha = alpha0;
    for (int iter = 0; iter < 30; ++iter) {
      Trial t = eval(alpha);
      if (!sufficient(t) || (iter > 0 && t.value >= prev.value)) return zoom(prev, t);
      if (curvature(t)) return t;
      if (t.slope >= 0) return zoom(t, prev);
      prev = std::move(t);
      alpha *= 2.0;
    }
    return prev.alpha > 0.0 ? std::optional<Trial>(prev) : std::nullopt;
  }
};

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, Vec x0, const LbfgsOptions& options) {
  LbfgsResult result;
  Vec x = std::move(x0);
  Vec g(x.size());
  double fx = f(x, g);
  std::deque<Vec> s_hist;
  std::deque<Vec> y_hist;
  std::deque<double> rho_hist;

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (g.norm() <= options.gradient_tolerance) break;

    // Two-loop recursion.
    Vec q = g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    else gamma = 1e-2 * std::max(1.0, x.norm()) / std::max(g.norm(), 1e-300);
    Vec d = -gamma * q;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(-d);
      d -= (alpha[i] - beta) * s_hist[i];
    }
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -1e-2 * std::max(1.0, x.norm()) / std::max(g.norm(), 1e-300) * g;
      slope = g.dot(d);
    }

    LineSearch ls{f, x, d, fx, slope};
    std::optional<Trial> step = ls.run(1.0);
    if (!step && !s_hist.empty()) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -1e-2 * std::max(1.0, x.norm()) / std::max(g.norm(), 1e-300) * g;
      LineSearch retry{f, x, d, fx, g.dot(d)};
      step = retry.run(1.0);
    }
    if (!step) break;

    Vec s = step->x - x;
    Vec y = step->gradient - g;
    x = std::move(step->x);
    g = std::move(step->gradient);
    fx = step->value;

    if (options.rescale) {
      const double r = options.rescale(x);
      if (r != 1.0) {
        g /= r;
        for (auto& si : s_hist) si *= r;
        for (auto& yi : y_hist) yi /= r;
        s *= r;
        y /= r;
      }
    }
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > options.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
  }

  result.x = std::move(x);
  result.value = fx;
  result.gradient_norm = g.norm();
  result.iterations = iter;
  result.reached_tolerance = result.gradient_norm <= options.gradient_tolerance;
  return result;
}

}  // namespace reeb::detail
