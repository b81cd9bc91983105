#include "reeb/besse_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <boost/integer/common_factor.hpp>

#include "reeb/errors.hpp"

namespace reeb {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

RationalEllipsoid::RationalEllipsoid(std::vector<Rational> a) : a_(std::move(a)) {
  if (a_.empty()) throw Error(ErrorKind::InvalidBody, "ellipsoid needs at least one parameter");
  for (const Rational& x : a_) {
    if (x <= 0) throw Error(ErrorKind::InvalidBody, "ellipsoid parameters must be positive");
  }
  std::sort(a_.begin(), a_.end());
  BigInt num_lcm = 1;
  BigInt den_gcd = 0;
  for (const Rational& x : a_) {
    num_lcm = boost::integer::lcm(num_lcm, BigInt(numerator(x)));
    den_gcd = boost::integer::gcd(den_gcd, BigInt(denominator(x)));
  }
  tau_ = Rational(num_lcm, den_gcd);
}

RationalEllipsoid RationalEllipsoid::from_body(const ConvexBody& body) {
  if (!body.is_rational_ellipsoid()) {
    throw Error(ErrorKind::UnsupportedBody, body.describe() + " is not a rational ellipsoid");
  }
  return RationalEllipsoid(*body.exact_params());
}

std::vector<SpectrumEntry> action_spectrum(const RationalEllipsoid& ell, const Rational& cutoff) {
  std::map<Rational, std::vector<int>> values;
  if (cutoff > 0) {
    for (int i = 0; i < ell.dim(); ++i) {
      const Rational& a = ell.params()[i];
      for (BigInt k = 1; k * a <= cutoff; ++k) values[k * a].push_back(i + 1);
    }
  }
  std::vector<SpectrumEntry> out;
  out.reserve(values.size());
  for (auto& [sigma, coords] : values) {
    SpectrumEntry e;
    e.sigma = sigma;
    e.divisor_coords = std::move(coords);
    e.multiplicity = static_cast<int>(e.divisor_coords.size());
    e.stratum_dim = 2 * e.multiplicity - 1;
    out.push_back(std::move(e));
  }
  return out;
}

InvariantSequence spectral_invariants(const RationalEllipsoid& ell, int m) {
  if (m < 1) throw std::invalid_argument("invariant count must be positive");
  InvariantSequence seq;
  // The first m multiples of a_1 already supply m terms.
  for (const SpectrumEntry& e : action_spectrum(ell, m * ell.params().front())) {
    for (int r = 0; r < e.multiplicity && static_cast<int>(seq.values.size()) < m; ++r) {
      seq.values.push_back(e.sigma);
    }
    if (static_cast<int>(seq.values.size()) == m) break;
  }
  return seq;
}

namespace {

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> small;
  std::vector<BigInt> large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

BigInt to_integer(const Rational& r) { return numerator(r) / denominator(r); }

}  // namespace

std::vector<StratumRecord> strata(const RationalEllipsoid& ell) {
  std::vector<BigInt> quotients;
  std::set<BigInt> ks;
  for (const Rational& a : ell.params()) {
    quotients.push_back(to_integer(ell.tau() / a));
    for (const BigInt& d : divisors(quotients.back())) ks.insert(d);
  }
  std::vector<StratumRecord> out;
  for (const BigInt& k : ks) {
    StratumRecord s;
    s.k = k;
    s.period = ell.tau() / Rational(k);
    for (int i = 0; i < ell.dim(); ++i) {
      if (quotients[i] % k == 0) s.coords.push_back(i + 1);
    }
    s.dim = 2 * static_cast<int>(s.coords.size()) - 1;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

IndexPair index_at_period(const RationalEllipsoid& ell, const Rational& c) {
  IndexPair p;
  for (const Rational& a : ell.params()) {
    const Rational q = c / a;
    p.index += 2 * (ceil_to_int(q) - 1).convert_to<int>();
    if (is_integer(q)) p.nullity += 2;
  }
  p.nullity -= 1;
  return p;
}

}  // namespace

IndexPair ellipsoid_orbit_index(const RationalEllipsoid& ell, int i0, int m) {
  if (i0 < 1 || i0 > ell.dim()) throw std::invalid_argument("coordinate index out of range");
  if (m < 1) throw std::invalid_argument("iterate must be positive");
  return index_at_period(ell, m * ell.params()[i0 - 1]);
}

std::vector<LadderRung> iota_ladder(const RationalEllipsoid& ell, const Rational& horizon) {
  std::vector<LadderRung> out;
  for (const SpectrumEntry& e : action_spectrum(ell, horizon)) {
    // Every orbit of period sigma has the same index and nullity, so the
    // min and max over the divisor coordinates come from one evaluation.
    const IndexPair p = index_at_period(ell, e.sigma);
    const int lo = p.index;
    const int hi = p.index + p.nullity - 1;
    if (!out.empty() && lo != out.back().iota1 + 2) {
      throw Error(ErrorKind::LadderViolation,
                  "iota_0 at sigma = " + format_rational(e.sigma) + " is " + std::to_string(lo) +
                      ", expected " + std::to_string(out.back().iota1 + 2));
    }
    out.push_back({e.sigma, lo, hi});
  }
  return out;
}

std::optional<int> besse_criterion(const std::vector<Rational>& values, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  for (int i = 0; i + n - 1 < static_cast<int>(values.size()); ++i) {
    if (values[i] == values[i + n - 1]) return i;
  }
  return std::nullopt;
}

std::optional<int> besse_criterion(const RationalEllipsoid& ell, int n, int m) {
  if (m < 1) return std::nullopt;
  return besse_criterion(spectral_invariants(ell, m).values, n);
}

namespace {

bool close(double x, double y, double tolerance) {
  return std::fabs(x - y) <= tolerance * std::max(std::fabs(x), std::fabs(y));
}

}  // namespace

std::vector<ApproxSpectrumEntry> approximate_spectrum(const std::vector<double>& a, double cutoff,
                                                      double tolerance) {
  std::vector<std::pair<double, int>> raw;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) throw Error(ErrorKind::InvalidBody, "ellipsoid parameters must be positive");
    for (long k = 1; k * a[i] <= cutoff * (1 + tolerance); ++k) raw.emplace_back(k * a[i], static_cast<int>(i) + 1);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<ApproxSpectrumEntry> out;
  for (const auto& [value, coord] : raw) {
    if (!out.empty() && close(out.back().sigma, value, tolerance)) {
      auto& coords = out.back().divisor_coords;
      if (std::find(coords.begin(), coords.end(), coord) == coords.end()) coords.push_back(coord);
      continue;
    }
    ApproxSpectrumEntry e;
    e.sigma = value;
    e.divisor_coords = {coord};
    out.push_back(std::move(e));
  }
  for (auto& e : out) {
    std::sort(e.divisor_coords.begin(), e.divisor_coords.end());
    e.multiplicity = static_cast<int>(e.divisor_coords.size());
    e.stratum_dim = 2 * e.multiplicity - 1;
  }
  return out;
}

std::vector<double> approximate_invariants(const std::vector<double>& a, int m, double tolerance) {
  if (m < 1) throw std::invalid_argument("invariant count must be positive");
  if (a.empty()) throw Error(ErrorKind::InvalidBody, "ellipsoid needs at least one parameter");
  const double a1 = *std::min_element(a.begin(), a.end());
  std::vector<double> values;
  for (const auto& e : approximate_spectrum(a, m * a1, tolerance)) {
    for (int r = 0; r < e.multiplicity && static_cast<int>(values.size()) < m; ++r) values.push_back(e.sigma);
    if (static_cast<int>(values.size()) == m) break;
  }
  return values;
}

std::optional<int> approximate_besse_criterion(const std::vector<double>& values, int n, double tolerance) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  for (int i = 0; i + n - 1 < static_cast<int>(values.size()); ++i) {
    if (close(values[i], values[i + n - 1], tolerance)) return i;
  }
  return std::nullopt;
}

}  // namespace reeb
