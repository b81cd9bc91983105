#include "reeb/symplectic_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reeb/errors.hpp"

namespace reeb {
namespace {

constexpr double kPathTolerance = 1e-13;

Mat inverse_spd(const Mat& a) {
  Eigen::LLT<Mat> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NonPositiveDefinite, "generator matrix is not positive definite");
  }
  return llt.solve(Mat::Identity(a.rows(), a.cols()));
}

// sigma_min(G - I) / ||G||_2
double crossing_ratio(const Mat& g) {
  Eigen::JacobiSVD<Mat> svd_shift(g - Mat::Identity(g.rows(), g.cols()));
  const Vec s = svd_shift.singularValues();
  const double norm = std::max(1.0, Eigen::JacobiSVD<Mat>(g).singularValues()(0));
  return s(s.size() - 1) / norm;
}

struct Refined {
  double t;
  double ratio;
  bool at_edge;
};

Refined golden_section(const SymplecticPath& path, double lo, double hi, const CrossingOptions& options) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  const double lo0 = lo;
  const double hi0 = hi;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = crossing_ratio(path.at(x1));
  double f2 = crossing_ratio(path.at(x2));
  for (int step = 0; step < options.max_refinement_steps && hi - lo > options.time_tolerance; ++step) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = crossing_ratio(path.at(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = crossing_ratio(path.at(x2));
    }
  }
  const double t = f1 <= f2 ? x1 : x2;
  const double edge = 4.0 * options.time_tolerance;
  return {t, std::min(f1, f2), t - lo0 <= edge || hi0 - t <= edge};
}

}  // namespace

PathGenerator constant_generator(const Mat& a, std::string description) {
  return PathGenerator{[a](double) { return a; }, static_cast<int>(a.rows() / 2), std::move(description)};
}

PathGenerator shifted(const PathGenerator& gen, double lambda) {
  auto base = gen.A;
  return PathGenerator{[base, lambda](double t) {
                         Mat a = base(t);
                         a.diagonal().array() -= lambda;
                         return a;
                       },
                       gen.dim, gen.description + " shifted by " + std::to_string(lambda)};
}

SymplecticPath path_from_generator(const PathGenerator& gen, double t0, double t1, const Mat& g0,
                                   int samples_per_unit) {
  const Mat j = complex_structure(gen.dim);
  auto a = gen.A;
  auto k = [j, a](double t) -> Mat { return j * inverse_spd(a(t)); };
  return integrate_linear_path(k, t0, t1, g0, samples_per_unit, kPathTolerance, gen.description);
}

SymplecticPath path_from_generator(const PathGenerator& gen, double tau, int samples_per_unit) {
  if (!(tau > 0.0) || tau > 1.0) throw Error(ErrorKind::InvalidBody, "tau must lie in (0, 1]");
  const int n2 = 2 * gen.dim;
  return path_from_generator(gen, 0.0, tau, Mat::Identity(n2, n2), samples_per_unit);
}

int kernel_dimension(const Mat& g, double rank_tolerance) {
  const Vec s = Eigen::JacobiSVD<Mat>(g - Mat::Identity(g.rows(), g.cols())).singularValues();
  const double norm = std::max(1.0, Eigen::JacobiSVD<Mat>(g).singularValues()(0));
  return static_cast<int>((s.array() < rank_tolerance * norm).count());
}

namespace {

constexpr int kFineSamples = 32;

// Local minima of r over the samples, including a decreasing run into either
// end, below the candidate threshold. Returns sample indices.
std::vector<std::size_t> candidate_minima(const std::vector<double>& r) {
  std::vector<std::size_t> out;
  const std::size_t m = r.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (r[i] > 0.5) continue;
    const bool left_ok = i == 0 || r[i] <= r[i - 1];
    const bool right_ok = i + 1 == m || r[i] < r[i + 1];
    if (left_ok && right_ok) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<CrossingRecord> count_crossings(const SymplecticPath& path, const CrossingOptions& options) {
  std::vector<CrossingRecord> out;
  const std::size_t m = path.size();
  if (m < 2) return out;
  const double t_begin = path.t_begin();
  const double t_end = path.t_end();
  const double grid_step = (t_end - t_begin) / static_cast<double>(m - 1);

  std::vector<double> ratio(m);
  for (std::size_t i = 0; i < m; ++i) ratio[i] = crossing_ratio(path.gammas[i]);

  std::vector<CrossingRecord> found;
  for (std::size_t i : candidate_minima(ratio)) {
    // Re-sweep the window around the coarse minimum so that crossings closer
    // than one grid step are seen separately.
    const double lo = path.times[i == 0 ? 0 : i - 1];
    const double hi = path.times[std::min(i + 1, m - 1)];
    std::vector<double> ft(kFineSamples + 1);
    std::vector<double> fr(kFineSamples + 1);
    for (int j = 0; j <= kFineSamples; ++j) {
      ft[j] = lo + (hi - lo) * j / kFineSamples;
      fr[j] = crossing_ratio(path.at(ft[j]));
    }
    for (std::size_t j : candidate_minima(fr)) {
      const double a = ft[j == 0 ? 0 : j - 1];
      const double b = ft[std::min<std::size_t>(j + 1, kFineSamples)];
      const Refined r = golden_section(path, a, b, options);
      if (r.t - t_begin <= 1e-8 || t_end - r.t <= 1e-8) continue;  // the endpoints are handled separately
      const int kdim = kernel_dimension(path.at(r.t), options.rank_tolerance);
      if (kdim == 0) continue;
      if (r.at_edge && r.t > lo + 1e-8 && r.t < hi - 1e-8) {
        throw Error(ErrorKind::UnresolvedCrossing,
                    "crossing near t = " + std::to_string(r.t) + " could not be isolated");
      }
      found.push_back({r.t, kdim, true});
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.t < y.t; });

  for (const auto& rec : found) {
    if (!out.empty() && rec.t - out.back().t < 1e-8) {
      out.back().kernel_dim = std::max(out.back().kernel_dim, rec.kernel_dim);
      continue;
    }
    if (!out.empty() && rec.t - out.back().t < grid_step) {
      out.back().kernel_dim += rec.kernel_dim;
      out.back().refined = false;
      continue;
    }
    out.push_back(rec);
  }
  const int end_dim = kernel_dimension(path.gammas.back(), options.rank_tolerance);
  if (end_dim > 0) out.push_back({t_end, end_dim, true});
  return out;
}

IndexResult morse_index_nullity(const SymplecticPath& path, const CrossingOptions& options) {
  IndexResult result;
  result.crossings = count_crossings(path, options);
  const double t_end = path.t_end();
  int endpoint = 0;
  for (const auto& c : result.crossings) {
    if (c.t == t_end) endpoint = c.kernel_dim;
    else result.index += c.kernel_dim;
  }
  if (endpoint == 0) {
    throw Error(ErrorKind::NotClosedOrbit, "endpoint t = " + std::to_string(t_end) +
                                               " has trivial kernel: not a closed-orbit period");
  }
  result.nullity = endpoint - 1;
  return result;
}

Mat hessian_form_matrix(const PathGenerator& gen, double tau, int mode_cutoff) {
  if (mode_cutoff < 1) throw Error(ErrorKind::InvalidBody, "mode cutoff must be >= 1");
  const int n2 = 2 * gen.dim;
  const int modes = 2 * mode_cutoff;
  const int size = modes * n2;
  auto mode_k = [mode_cutoff](int slot) { return slot < mode_cutoff ? slot + 1 : -(slot - mode_cutoff + 1); };

  Mat h = Mat::Zero(size, size);
  // <zeta, J etadot> with zeta the primitive of exp(2 pi k t J / tau) v gives -tau^2 / (2 pi k).
  for (int slot = 0; slot < modes; ++slot) {
    const double k = mode_k(slot);
    h.block(slot * n2, slot * n2, n2, n2).diagonal().setConstant(-tau * tau / (2.0 * std::numbers::pi * k));
  }

  const int nodes = 8 * mode_cutoff;
  const double dt = tau / nodes;
  const Mat j = complex_structure(gen.dim);
  Mat basis(n2, size);
  for (int node = 0; node <= nodes; ++node) {
    const double t = node * dt;
    const double weight = (node == 0 || node == nodes) ? 0.5 * dt : dt;
    for (int slot = 0; slot < modes; ++slot) {
      const double theta = 2.0 * std::numbers::pi * mode_k(slot) * t / tau;
      basis.middleCols(slot * n2, n2) = j * block_rotation(gen.dim, theta);
    }
    const Mat a = gen.A(t);
    h.noalias() += weight * basis.transpose() * (a * basis);
  }
  return 0.5 * (h + h.transpose());
}

Vec hessian_form_eigenvalues(const PathGenerator& gen, double tau, int mode_cutoff) {
  const Mat h = hessian_form_matrix(gen, tau, mode_cutoff);
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues() / tau;
}

int hessian_form_negative_count(const PathGenerator& gen, double tau, int mode_cutoff) {
  const Vec ev = hessian_form_eigenvalues(gen, tau, mode_cutoff);
  const double scale = ev.cwiseAbs().maxCoeff();
  return static_cast<int>((ev.array() < -1e-10 * scale).count());
}

double eigenspace_shooting_defect(const PathGenerator& gen, double tau, double lambda) {
  const SymplecticPath path = path_from_generator(shifted(gen, lambda), tau, 16);
  return crossing_ratio(path.gammas.back());
}

bool eigenspace_shooting_check(const PathGenerator& gen, double tau, double lambda, double rank_tolerance) {
  const SymplecticPath path = path_from_generator(shifted(gen, lambda), tau, 16);
  return kernel_dimension(path.gammas.back(), rank_tolerance) > 0;
}

}  // namespace reeb
