#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "reeb/loop.hpp"

using namespace reeb;

namespace {

LoopCoefficients random_loop(std::mt19937_64& rng, int n, int cutoff) {
  std::normal_distribution<double> normal;
  LoopCoefficients loop(n, cutoff);
  for (int i = 0; i < loop.real_size(); ++i) loop.flat()[i] = normal(rng);
  return loop;
}

// Direct evaluation of sum_k exp(2 pi k t J) v_k.
Vec direct_sample(const LoopCoefficients& loop, double t) {
  Vec out = Vec::Zero(2 * loop.dim());
  for (int k = -loop.cutoff(); k <= loop.cutoff(); ++k) {
    if (k == 0) continue;
    out += block_rotation(loop.dim(), 2 * std::numbers::pi * k * t) * loop.mode(k);
  }
  return out;
}

}  // namespace

TEST_CASE("mode storage") {
  LoopCoefficients loop(2, 3);
  CHECK(loop.real_size() == 2 * 3 * 4);
  Vec v(4);
  v << 1, 2, 3, 4;
  loop.set_mode(-2, v);
  CHECK(loop.mode(-2) == v);
  CHECK(loop.coefficient(-2, 1) == std::complex<double>(3, 4));
  CHECK(loop.mode(2).norm() == 0.0);
  CHECK_THROWS(loop.mode(0));
  CHECK_THROWS(loop.mode(4));
}

TEST_CASE("samples agree with direct evaluation") {
  std::mt19937_64 rng(1);
  const LoopCoefficients loop = random_loop(rng, 2, 5);
  const int m = 40;
  const auto s = loop.samples(m);
  for (int j = 0; j < m; ++j) CHECK((s[j] - direct_sample(loop, double(j) / m)).norm() < 1e-12);
}

TEST_CASE("sample round trip") {
  std::mt19937_64 rng(2);
  for (int n : {1, 2, 3}) {
    for (int cutoff : {1, 8, 64}) {
      const LoopCoefficients loop = random_loop(rng, n, cutoff);
      for (int m : {4 * cutoff, 8 * cutoff, 2 * cutoff + 1}) {
        if (m < 2 * cutoff + 1) continue;
        const auto back = LoopCoefficients::from_samples(loop.samples(m), cutoff);
        CHECK((back.flat() - loop.flat()).norm() <= 1e-12 * std::max(1.0, loop.flat().norm()));
      }
    }
  }
  const LoopCoefficients small = random_loop(rng, 1, 4);
  CHECK_THROWS(small.samples(8));
}

TEST_CASE("primitive is zero-mean and differentiates to the loop") {
  std::mt19937_64 rng(3);
  const LoopCoefficients loop = random_loop(rng, 2, 6);
  const int m = 4096;
  const auto p = loop.primitive_samples(m);
  const auto s = loop.samples(m);
  Vec mean = Vec::Zero(4);
  for (const auto& v : p) mean += v;
  CHECK(mean.norm() / m < 1e-12);
  for (int j = 1; j + 1 < m; j += 97) {
    const Vec fd = (p[j + 1] - p[j - 1]) * (m / 2.0);
    CHECK((fd - s[j]).norm() < 1e-3 * std::max(1.0, s[j].norm()));
  }
}

TEST_CASE("transformations") {
  std::mt19937_64 rng(4);
  const LoopCoefficients loop = random_loop(rng, 2, 4);
  const double shift = 0.3141;
  const LoopCoefficients shifted = loop.time_shifted(shift);
  const LoopCoefficients tripled = loop.iterate(3);
  CHECK(tripled.cutoff() == 12);
  for (double t : {0.0, 0.1, 0.77}) {
    CHECK((direct_sample(shifted, t) - direct_sample(loop, t + shift)).norm() < 1e-12);
    CHECK((direct_sample(tripled, t) - direct_sample(loop, 3 * t)).norm() < 1e-12);
  }
  CHECK((loop.scaled(2.5).flat() - 2.5 * loop.flat()).norm() < 1e-15);
  const LoopCoefficients wide = loop.with_cutoff(9);
  CHECK(wide.cutoff() == 9);
  CHECK((direct_sample(wide, 0.4) - direct_sample(loop, 0.4)).norm() < 1e-12);
  const LoopCoefficients narrow = loop.with_cutoff(2);
  CHECK(narrow.mode(-2) == loop.mode(-2));
}
