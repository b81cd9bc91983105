#include "reeb/convex_body.hpp"

#include <charconv>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "reeb/errors.hpp"

namespace reeb {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNewtonTolerance = 1e-12;
constexpr int kNewtonMaxIterations = 50;

void require_positive(const std::vector<double>& a) {
  if (a.empty()) throw Error(ErrorKind::InvalidBody, "body needs at least one parameter");
  for (double ai : a) {
    if (!(ai > 0.0) || !std::isfinite(ai)) {
      throw Error(ErrorKind::InvalidBody, "parameters must be positive and finite");
    }
  }
}

double block_norm2(const Vec& w, int i) { return w(2 * i) * w(2 * i) + w(2 * i + 1) * w(2 * i + 1); }

}  // namespace

ConvexBody::ConvexBody(BodyKind kind, std::vector<double> a, double q,
                       std::optional<std::vector<Rational>> exact)
    : kind_(kind), a_(std::move(a)), q_(q), exact_(std::move(exact)) {}

ConvexBody ConvexBody::ellipsoid(std::vector<double> a) {
  require_positive(a);
  std::sort(a.begin(), a.end());
  return ConvexBody(BodyKind::Ellipsoid, std::move(a), 1.0, std::nullopt);
}

ConvexBody ConvexBody::ellipsoid(std::vector<Rational> a) {
  if (a.empty()) throw Error(ErrorKind::InvalidBody, "body needs at least one parameter");
  for (const auto& ai : a) {
    if (ai <= 0) throw Error(ErrorKind::InvalidBody, "parameters must be positive");
  }
  std::sort(a.begin(), a.end());
  std::vector<double> approx;
  approx.reserve(a.size());
  for (const auto& ai : a) approx.push_back(to_double(ai));
  return ConvexBody(BodyKind::Ellipsoid, std::move(approx), 1.0, std::move(a));
}

ConvexBody ConvexBody::dual_power(std::vector<double> a, double q) {
  require_positive(a);
  if (!(q >= 1.0) || q > kMaxExponent) {
    throw Error(ErrorKind::InvalidBody, "dual-power exponent must lie in [1, 8]");
  }
  return ConvexBody(BodyKind::DualPower, std::move(a), q, std::nullopt);
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os << (kind_ == BodyKind::Ellipsoid ? "E(" : "DP(");
  for (int i = 0; i < dim(); ++i) {
    if (i) os << ", ";
    if (exact_) os << format_rational((*exact_)[i]);
    else {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, a_[i]);
      os << std::string_view(buf, res.ptr - buf);
    }
  }
  if (kind_ == BodyKind::DualPower) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, q_);
    os << "; q=" << std::string_view(buf, res.ptr - buf);
  }
  os << ")";
  return os.str();
}

void ConvexBody::check_dim(const Vec& v) const {
  if (v.size() != 2 * dim()) {
    throw Error(ErrorKind::InvalidBody, "point has " + std::to_string(v.size()) +
                                            " coordinates, body expects " + std::to_string(2 * dim()));
  }
}

double ConvexBody::dual_value(const Vec& w) const {
  check_dim(w);
  if (kind_ == BodyKind::Ellipsoid || q_ == 1.0) {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += a_[i] * block_norm2(w, i) / kFourPi;
    return s;
  }
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) s += std::pow(a_[i] * block_norm2(w, i) / kFourPi, q_);
  return s > 0.0 ? std::pow(s, 1.0 / q_) : 0.0;
}

Vec ConvexBody::dual_grad(const Vec& w) const {
  check_dim(w);
  Vec g(w.size());
  if (kind_ == BodyKind::Ellipsoid || q_ == 1.0) {
    for (int i = 0; i < dim(); ++i) g.segment<2>(2 * i) = (a_[i] / kTwoPi) * w.segment<2>(2 * i);
    return g;
  }
  std::vector<double> u(dim());
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) {
    u[i] = a_[i] * block_norm2(w, i) / kFourPi;
    s += std::pow(u[i], q_);
  }
  if (s == 0.0) return Vec::Zero(w.size());
  const double outer = std::pow(s, 1.0 / q_ - 1.0);
  for (int i = 0; i < dim(); ++i) {
    const double gi = outer * std::pow(u[i], q_ - 1.0) * a_[i] / kTwoPi;
    g.segment<2>(2 * i) = gi * w.segment<2>(2 * i);
  }
  return g;
}

Mat ConvexBody::dual_hess(const Vec& w) const {
  check_dim(w);
  if (w.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroArgument, "dual Hessian undefined at w = 0");
  const int n2 = 2 * dim();
  Mat h = Mat::Zero(n2, n2);
  if (kind_ == BodyKind::Ellipsoid || q_ == 1.0) {
    for (int i = 0; i < dim(); ++i) h.block<2, 2>(2 * i, 2 * i) = (a_[i] / kTwoPi) * Eigen::Matrix2d::Identity();
    return h;
  }
  // With u_i = a_i|w_i|^2/(4 pi), S = sum u_i^q and beta_i = (a_i/2pi) u_i^{q-1} w_i:
  //   H_ij = (1-q) S^{1/q-2} beta_i beta_j^T
  //        + delta_ij [ (q-1) S^{1/q-1} u_i^{q-2} (a_i/2pi)^2 w_i w_i^T + g_i I ].
  std::vector<double> u(dim());
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) {
    u[i] = a_[i] * block_norm2(w, i) / kFourPi;
    s += std::pow(u[i], q_);
  }
  const double s_outer = std::pow(s, 1.0 / q_ - 1.0);
  const double s_rank = (1.0 - q_) * std::pow(s, 1.0 / q_ - 2.0);
  Vec beta(n2);
  for (int i = 0; i < dim(); ++i) {
    beta.segment<2>(2 * i) = (a_[i] / kTwoPi) * std::pow(u[i], q_ - 1.0) * w.segment<2>(2 * i);
  }
  h = s_rank * beta * beta.transpose();
  for (int i = 0; i < dim(); ++i) {
    const double ci = a_[i] / kTwoPi;
    const Eigen::Vector2d wi = w.segment<2>(2 * i);
    h.block<2, 2>(2 * i, 2 * i) += s_outer * std::pow(u[i], q_ - 1.0) * ci * Eigen::Matrix2d::Identity();
    if (u[i] > 0.0) {
      h.block<2, 2>(2 * i, 2 * i) += (q_ - 1.0) * s_outer * std::pow(u[i], q_ - 2.0) * ci * ci * (wi * wi.transpose());
    }
  }
  return h;
}

Vec ConvexBody::legendre_inverse(const Vec& z) const {
  check_dim(z);
  Vec w(z.size());
  for (int i = 0; i < dim(); ++i) w.segment<2>(2 * i) = (kTwoPi / a_[i]) * z.segment<2>(2 * i);
  if (kind_ == BodyKind::Ellipsoid || q_ == 1.0 || z.squaredNorm() == 0.0) return w;

  // Best multiple of the ellipsoid guess along its ray, using 2-homogeneity.
  const double hw = dual_value(w);
  if (hw > 0.0) w *= z.dot(w) / (2.0 * hw);

  const double scale = std::max(1.0, z.norm());
  auto objective = [&](const Vec& x) { return dual_value(x) - z.dot(x); };
  Vec residual = dual_grad(w) - z;
  for (int iter = 0; iter < kNewtonMaxIterations; ++iter) {
    if (residual.norm() <= kNewtonTolerance * scale) return w;
    Mat m = dual_hess(w);
    m.diagonal().array() += 1e-15 * std::max(1.0, m.norm());
    const Vec step = -m.ldlt().solve(residual);
    const double f0 = objective(w);
    const double slope = residual.dot(step);
    double alpha = 1.0;
    Vec candidate;
    Vec candidate_residual;
    for (int back = 0; back < 40; ++back, alpha *= 0.5) {
      candidate = w + alpha * step;
      candidate_residual = dual_grad(candidate) - z;
      if (objective(candidate) <= f0 + 1e-4 * alpha * slope ||
          candidate_residual.norm() < residual.norm()) {
        break;
      }
    }
    w = candidate;
    residual = candidate_residual;
  }
  if (residual.norm() <= kNewtonTolerance * scale) return w;
  throw Error(ErrorKind::NewtonDivergence,
              "Legendre inversion residual " + std::to_string(residual.norm()) + " after " +
                  std::to_string(kNewtonMaxIterations) + " iterations");
}

double ConvexBody::primal_value(const Vec& z) const {
  check_dim(z);
  if (kind_ == BodyKind::Ellipsoid || q_ == 1.0) {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += std::numbers::pi * block_norm2(z, i) / a_[i];
    return s;
  }
  if (z.squaredNorm() == 0.0) return 0.0;
  // Fenchel equality for 2-homogeneous pairs: H(grad H*(w)) = H*(w).
  return dual_value(legendre_inverse(z));
}

Vec ConvexBody::primal_grad(const Vec& z) const {
  check_dim(z);
  if (z.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroArgument, "primal gradient requested at z = 0");
  return legendre_inverse(z);
}

Mat ConvexBody::primal_hess(const Vec& z) const {
  check_dim(z);
  if (z.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroArgument, "primal Hessian requested at z = 0");
  const Mat m = dual_hess(legendre_inverse(z));
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NonPositiveDefinite, "dual Hessian is singular at the inverted point");
  }
  return llt.solve(Mat::Identity(m.rows(), m.cols()));
}

}  // namespace reeb
