#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "reeb/besse_spectra.hpp"
#include "reeb/errors.hpp"
#include "reeb/reeb_flow.hpp"
#include "reeb/symplectic_index.hpp"

using namespace reeb;

namespace {

RationalEllipsoid ell(std::initializer_list<Rational> a) { return RationalEllipsoid(std::vector<Rational>(a)); }

std::vector<std::pair<std::string, int>> table(const std::vector<SpectrumEntry>& s) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& e : s) out.emplace_back(format_rational(e.sigma), e.multiplicity);
  return out;
}

std::vector<std::string> strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

Rational frac(long long p, long long q = 1) { return Rational(p, q); }

}  // namespace

TEST_CASE("tau") {
  CHECK(ell({1, 2}).tau() == 2);
  CHECK(ell({1, 1}).tau() == 1);
  CHECK(ell({2, 3}).tau() == 6);
  CHECK(ell({frac(3, 2), frac(5, 4)}).tau() == frac(15, 2));
  CHECK(ell({frac(1, 2), frac(1, 3)}).tau() == 1);
  CHECK(ell({frac(2, 3), frac(4, 9)}).tau() == frac(4, 3));
  for (const auto& e : {ell({frac(3, 2), frac(5, 4), 2}), ell({frac(2, 3), frac(4, 9)})}) {
    for (const Rational& a : e.params()) CHECK(is_integer(e.tau() / a));
  }
  CHECK(ell({3, 1, 2}).params().front() == 1);
  CHECK_THROWS_AS(ell({1, 0}), Error);
  try {
    RationalEllipsoid::from_body(ConvexBody::dual_power({1, 2}, 2.0));
    FAIL("expected UnsupportedBody");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedBody);
  }
  CHECK_THROWS_AS(RationalEllipsoid::from_body(ConvexBody::ellipsoid(std::vector<double>{1, 1.5})), Error);
}

TEST_CASE("action spectrum examples") {
  using T = std::vector<std::pair<std::string, int>>;
  CHECK(table(action_spectrum(ell({1, 2}), 4)) == T{{"1", 1}, {"2", 2}, {"3", 1}, {"4", 2}});
  CHECK(table(action_spectrum(ell({1, 1, 1}), 3)) == T{{"1", 3}, {"2", 3}, {"3", 3}});
  CHECK(table(action_spectrum(ell({2, 3}), 12)) ==
        T{{"2", 1}, {"3", 1}, {"4", 1}, {"6", 2}, {"8", 1}, {"9", 1}, {"10", 1}, {"12", 2}});
  CHECK(action_spectrum(ell({1, 2}), 0).empty());
  CHECK(action_spectrum(ell({1, 2}), frac(1, 2)).empty());
  const auto s = action_spectrum(ell({2, 3}), 6);
  CHECK(s.back().divisor_coords == std::vector<int>{1, 2});
  CHECK(s.back().stratum_dim == 3);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].sigma < s[i].sigma);
}

TEST_CASE("spectrum matches the brute-force enumerator") {
  using oracle::Frac;
  const std::vector<std::vector<Frac>> cases = {
      {{1, 1}, {2, 1}}, {{2, 1}, {3, 1}}, {{1, 1}, {1, 1}, {1, 1}}, {{1, 1}, {2, 1}, {3, 1}},
      {{3, 2}, {5, 4}}, {{1, 3}, {1, 2}, {7, 5}}};
  for (const auto& a : cases) {
    std::vector<Rational> params;
    for (const auto& f : a) params.push_back(frac(f.p, f.q));
    const RationalEllipsoid e(params);
    const auto expected = oracle::brute_force_spectrum(a, {30, 1});
    const auto got = action_spectrum(e, 30);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].sigma == frac(expected[i].first.p, expected[i].first.q));
      CHECK(got[i].multiplicity == expected[i].second);
    }
  }
}

TEST_CASE("spectral invariants examples") {
  using S = std::vector<std::string>;
  CHECK(strings(spectral_invariants(ell({1, 2}), 6).values) == S{"1", "2", "2", "3", "4", "4"});
  CHECK(strings(spectral_invariants(ell({1, 1}), 4).values) == S{"1", "1", "2", "2"});
  CHECK(strings(spectral_invariants(ell({2, 3}), 5).values) == S{"2", "3", "4", "6", "6"});
  CHECK(strings(spectral_invariants(ell({frac(3, 2), 2}), 4).values) == S{"3/2", "2", "3", "4"});
  CHECK(spectral_invariants(ell({1, 1, 1}), 1).values.size() == 1);
  CHECK_THROWS(spectral_invariants(ell({1, 2}), 0));
  const auto v = spectral_invariants(ell({1, 2, 3}), 40).values;
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] <= v[i]);
}

TEST_CASE("strata examples") {
  const auto s12 = strata(ell({1, 2}));
  REQUIRE(s12.size() == 2);
  CHECK(s12[0].k == 1);
  CHECK(s12[0].coords == std::vector<int>{1, 2});
  CHECK(s12[0].dim == 3);
  CHECK(s12[1].k == 2);
  CHECK(s12[1].coords == std::vector<int>{1});
  CHECK(s12[1].dim == 1);
  CHECK(s12[1].period == 1);

  const auto s11 = strata(ell({1, 1}));
  REQUIRE(s11.size() == 1);
  CHECK(s11[0].dim == 3);

  const auto s23 = strata(ell({2, 3}));
  REQUIRE(s23.size() == 3);
  CHECK(s23[1].k == 2);
  CHECK(s23[1].coords == std::vector<int>{2});
  CHECK(s23[2].k == 3);
  CHECK(s23[2].coords == std::vector<int>{1});
  CHECK(s23[2].period == 2);
}

TEST_CASE("stratum nesting") {
  for (const auto& e : {ell({2, 3}), ell({1, 2, 3}), ell({2, 4, 6}), ell({frac(3, 2), frac(5, 4), 2})}) {
    const auto s = strata(e);
    CHECK(s.front().k == 1);
    CHECK(static_cast<int>(s.front().coords.size()) == e.dim());
    for (const auto& a : s) {
      CHECK_FALSE(a.coords.empty());
      CHECK(a.dim == 2 * static_cast<int>(a.coords.size()) - 1);
      for (const auto& b : s) {
        if (b.k % a.k != 0) continue;
        for (int c : b.coords) CHECK(std::find(a.coords.begin(), a.coords.end(), c) != a.coords.end());
      }
    }
  }
}

TEST_CASE("ellipsoid orbit index examples") {
  const auto e = ell({1, 2});
  auto pair = [&](int i0, int m) {
    const IndexPair p = ellipsoid_orbit_index(e, i0, m);
    return std::make_pair(p.index, p.nullity);
  };
  CHECK(pair(1, 1) == std::make_pair(0, 1));
  CHECK(pair(1, 2) == std::make_pair(2, 3));
  CHECK(pair(1, 3) == std::make_pair(6, 1));
  CHECK(pair(2, 1) == std::make_pair(2, 3));
  CHECK_THROWS(ellipsoid_orbit_index(e, 3, 1));
  CHECK_THROWS(ellipsoid_orbit_index(e, 1, 0));
}

TEST_CASE("closed-form indices agree with the numerical crossing count") {
  for (const auto& a : {std::vector<Rational>{1, 2}, std::vector<Rational>{2, 3}, std::vector<Rational>{1, 1, 2}}) {
    const RationalEllipsoid e(a);
    const auto body = ConvexBody::ellipsoid(a);
    for (int i0 = 1; i0 <= e.dim(); ++i0) {
      for (int m = 1; m * e.params()[i0 - 1] <= 6; ++m) {
        const double c = to_double(m * e.params()[i0 - 1]);
        Vec z = Vec::Zero(2 * e.dim());
        z[2 * (i0 - 1)] = std::sqrt(to_double(e.params()[i0 - 1]) / std::numbers::pi);
        const IndexResult r = morse_index_nullity(flow_with_linearization(body, z, c).path);
        const IndexPair p = ellipsoid_orbit_index(e, i0, m);
        CAPTURE(body.describe());
        CAPTURE(i0);
        CAPTURE(m);
        CHECK(r.index == p.index);
        CHECK(r.nullity == p.nullity);
      }
    }
  }
}

TEST_CASE("iota ladder examples") {
  auto rungs = [](const RationalEllipsoid& e, const Rational& h) {
    std::vector<std::tuple<std::string, int, int>> out;
    for (const auto& r : iota_ladder(e, h)) out.emplace_back(format_rational(r.sigma), r.iota0, r.iota1);
    return out;
  };
  using L = std::vector<std::tuple<std::string, int, int>>;
  CHECK(rungs(ell({1, 2}), 4) == L{{"1", 0, 0}, {"2", 2, 4}, {"3", 6, 6}, {"4", 8, 10}});
  CHECK(rungs(ell({1, 1}), 2) == L{{"1", 0, 2}, {"2", 4, 6}});
  CHECK_NOTHROW(iota_ladder(ell({2, 3}), 12));
  CHECK(iota_ladder(ell({1, 2}), 0).empty());
}

TEST_CASE("ladder, multiplicity and invariant duality") {
  for (const auto& e : {ell({1, 2}), ell({2, 3}), ell({1, 1, 1}), ell({1, 2, 3}), ell({frac(3, 2), frac(5, 4)})}) {
    const auto spec = action_spectrum(e, 20 * e.params().front());
    const auto ladder = iota_ladder(e, spec.back().sigma);
    REQUIRE(ladder.size() == spec.size());
    const auto inv = spectral_invariants(e, ladder.back().iota1 / 2 + 1).values;
    for (std::size_t j = 0; j < ladder.size(); ++j) {
      CHECK(ladder[j].iota0 % 2 == 0);
      CHECK(spec[j].multiplicity == 1 + (ladder[j].iota1 - ladder[j].iota0) / 2);
      CHECK(inv[ladder[j].iota0 / 2] == spec[j].sigma);
      CHECK(inv[ladder[j].iota1 / 2] == spec[j].sigma);
      if (j + 1 < ladder.size()) CHECK(ladder[j + 1].iota0 == ladder[j].iota1 + 2);
    }
  }
}

TEST_CASE("Besse criterion") {
  CHECK(besse_criterion(ell({1, 2}), 2, 10) == 1);
  CHECK(besse_criterion(ell({1, 1}), 2, 4) == 0);
  CHECK_FALSE(besse_criterion(ell({1, 2}), 2, 1).has_value());
  CHECK(besse_criterion(ell({2, 3}), 2, 10) == 3);
  CHECK(besse_criterion(ell({1, 1, 1}), 3, 3) == 0);
  CHECK(besse_criterion(ell({1, 2, 3}), 3, 20) == 8);
  CHECK(besse_criterion(std::vector<Rational>{1, 2, 3}, 1) == 0);
}

TEST_CASE("float mode") {
  const std::vector<double> irr{1, 1.41421356237};
  const auto spec = approximate_spectrum(irr, 4);
  REQUIRE(spec.size() == 6);
  for (const auto& e : spec) CHECK(e.multiplicity == 1);
  CHECK_FALSE(approximate_besse_criterion(approximate_invariants(irr, 200), 2).has_value());

  const auto tie = approximate_spectrum({0.1, 0.3}, 0.6);
  std::vector<int> mult;
  for (const auto& e : tie) mult.push_back(e.multiplicity);
  CHECK(mult == std::vector<int>{1, 1, 2, 1, 1, 2});
  CHECK(approximate_invariants({1, 2}, 6) == std::vector<double>{1, 2, 2, 3, 4, 4});
  CHECK(approximate_besse_criterion(approximate_invariants({1, 2}, 10), 2) == 1);
}
