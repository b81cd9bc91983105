#pragma once

#include <optional>
#include <vector>

#include "reeb/convex_body.hpp"
#include "reeb/rational.hpp"

namespace reeb {

/// Ellipsoid E(a_1, ..., a_n) with exact rational parameters, sorted ascending.
/// tau is the rational lcm of the a_i, the common period of the Reeb flow.
class RationalEllipsoid {
 public:
  /// Throws Error(InvalidBody) unless all a_i > 0.
  explicit RationalEllipsoid(std::vector<Rational> a);
  /// Throws Error(UnsupportedBody) unless the body is an ellipsoid with exact parameters.
  static RationalEllipsoid from_body(const ConvexBody& body);

  int dim() const { return static_cast<int>(a_.size()); }
  const std::vector<Rational>& params() const { return a_; }
  const Rational& tau() const { return tau_; }

 private:
  std::vector<Rational> a_;
  Rational tau_;
};

/// Coordinates are numbered from 1.
struct SpectrumEntry {
  Rational sigma;
  int multiplicity = 0;
  int stratum_dim = 0;
  std::vector<int> divisor_coords;
};

struct InvariantSequence {
  std::vector<Rational> values;
};

struct StratumRecord {
  BigInt k;
  Rational period;
  std::vector<int> coords;
  int dim = 0;
};

struct IndexPair {
  int index = 0;
  int nullity = 0;
};

struct LadderRung {
  Rational sigma;
  int iota0 = 0;
  int iota1 = 0;
};

/// Distinct values m a_i <= cutoff, increasing, with the coordinates dividing
/// each one. Empty for cutoff <= 0.
std::vector<SpectrumEntry> action_spectrum(const RationalEllipsoid& ell, const Rational& cutoff);

/// First m terms of sigma_1 x d_1, sigma_2 x d_2, ...
InvariantSequence spectral_invariants(const RationalEllipsoid& ell, int m);

/// One record per k >= 1 with {i : tau / (k a_i) integral} nonempty.
std::vector<StratumRecord> strata(const RationalEllipsoid& ell);

/// Index and nullity of the m-th iterate of the simple orbit in coordinate
/// plane i0, period c = m a_{i0}:
///   ind = sum_i 2 #{t in (0, c) : t / a_i integral},  nul = sum_i 2 [c / a_i integral] - 1.
IndexPair ellipsoid_orbit_index(const RationalEllipsoid& ell, int i0, int m);

/// (sigma_j, iota_0(j), iota_1(j)) for sigma_j <= horizon. Throws
/// Error(LadderViolation) if iota_0(j+1) != iota_1(j) + 2 anywhere.
std::vector<LadderRung> iota_ladder(const RationalEllipsoid& ell, const Rational& horizon);

/// Smallest i with c_i = c_{i+n-1} among the first m invariants.
std::optional<int> besse_criterion(const RationalEllipsoid& ell, int n, int m);
std::optional<int> besse_criterion(const std::vector<Rational>& values, int n);

// Float mode for ellipsoids without exact parameters. Values are merged when
// they agree to a relative tolerance; results are approximate.

struct ApproxSpectrumEntry {
  double sigma = 0.0;
  int multiplicity = 0;
  int stratum_dim = 0;
  std::vector<int> divisor_coords;
};

constexpr double kSpectrumMergeTolerance = 1e-12;

std::vector<ApproxSpectrumEntry> approximate_spectrum(const std::vector<double>& a, double cutoff,
                                                      double tolerance = kSpectrumMergeTolerance);
std::vector<double> approximate_invariants(const std::vector<double>& a, int m,
                                           double tolerance = kSpectrumMergeTolerance);
std::optional<int> approximate_besse_criterion(const std::vector<double>& values, int n,
                                               double tolerance = kSpectrumMergeTolerance);

}  // namespace reeb
