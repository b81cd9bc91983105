#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reeb/linalg.hpp"
#include "reeb/rational.hpp"

namespace reeb {

enum class BodyKind { Ellipsoid, DualPower };

/// A convex sphere Y = H^{-1}(1) in R^{2n}, where H is the 2-homogeneous
/// Hamiltonian normalised by H|_Y = 1. Bodies are described on the dual side:
/// H* has a closed form and H is recovered by Legendre inversion.
///
///   Ellipsoid E(a):        H*(w) = sum_i a_i |w_i|^2 / (4 pi)
///   DualPower (a, q):      H*(w) = (sum_i (a_i |w_i|^2 / (4 pi))^q)^{1/q}
///
/// For q = 1 the dual-power family reduces to the ellipsoid. For q > 1 the
/// dual Hessian degenerates on the coordinate planes {w_i = 0}.
///
/// Values are immutable after construction.
class ConvexBody {
 public:
  static constexpr double kMaxExponent = 8.0;

  /// Parameters are sorted ascending. Throws Error(InvalidBody) unless all a_i > 0.
  static ConvexBody ellipsoid(std::vector<double> a);
  static ConvexBody ellipsoid(std::vector<Rational> a);
  /// Requires a_i > 0 and 1 <= q <= kMaxExponent.
  static ConvexBody dual_power(std::vector<double> a, double q);

  BodyKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(a_.size()); }
  const std::vector<double>& params() const { return a_; }
  double exponent() const { return q_; }
  /// Exact parameters when the ellipsoid was built from rationals.
  const std::optional<std::vector<Rational>>& exact_params() const { return exact_; }
  bool is_rational_ellipsoid() const { return kind_ == BodyKind::Ellipsoid && exact_.has_value(); }
  std::string describe() const;

  double dual_value(const Vec& w) const;
  Vec dual_grad(const Vec& w) const;
  /// Throws Error(ZeroArgument) at w = 0.
  Mat dual_hess(const Vec& w) const;

  double primal_value(const Vec& z) const;
  /// Throws Error(ZeroArgument) at z = 0 and Error(NewtonDivergence) when the
  /// Legendre inversion fails.
  Vec primal_grad(const Vec& z) const;
  Mat primal_hess(const Vec& z) const;

  /// Solves grad H*(w) = z for w (= grad H(z)); closed form for ellipsoids,
  /// damped Newton on w -> H*(w) - <z, w> otherwise.
  Vec legendre_inverse(const Vec& z) const;

 private:
  ConvexBody(BodyKind kind, std::vector<double> a, double q,
             std::optional<std::vector<Rational>> exact);

  void check_dim(const Vec& v) const;

  BodyKind kind_;
  std::vector<double> a_;
  double q_ = 1.0;
  std::optional<std::vector<Rational>> exact_;
};

}  // namespace reeb
