#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "reeb/clarke.hpp"
#include "reeb/errors.hpp"
#include "reeb/reeb_flow.hpp"

using namespace reeb;

namespace {

const double kPi = std::numbers::pi;

Vec on_level(const ConvexBody& body, const Vec& z) { return z / std::sqrt(body.primal_value(z)); }

Vec first_circle_point(int n) {
  Vec z = Vec::Zero(2 * n);
  z[0] = 1 / std::sqrt(kPi);
  return z;
}

}  // namespace

TEST_CASE("ellipsoid flow examples") {
  const auto e12 = ConvexBody::ellipsoid(std::vector<double>{1, 2});
  const Vec z0 = first_circle_point(2);
  const Trajectory half = reeb_flow(e12, z0, 0.5, 4);
  CHECK((half.points.back() + z0).norm() < 1e-10);
  CHECK(half.times.back() == 0.5);
  CHECK(half.points.size() == 5);
  const Trajectory zero = reeb_flow(e12, z0, 0.0, 1);
  CHECK((zero.points.back() - z0).norm() == 0.0);
  const Trajectory full = reeb_flow(e12, z0, 1.0, 8);
  CHECK((full.points.back() - z0).norm() < 1e-10);
}

TEST_CASE("ellipsoid flow matches the rotation oracle") {
  std::mt19937_64 rng(5);
  for (const std::vector<double>& a : {std::vector<double>{1, 2}, std::vector<double>{1, 1.5, 2.5},
                                       std::vector<double>{0.8}}) {
    const auto body = ConvexBody::ellipsoid(a);
    const Vec z0 = on_level(body, oracle::random_generic_point(rng, body.dim()));
    const Trajectory tr = reeb_flow(body, z0, 3.3, 33);
    for (std::size_t j = 0; j < tr.times.size(); ++j) {
      CHECK((tr.points[j] - oracle::ellipsoid_flow(a, z0, tr.times[j])).norm() < 1e-10);
    }
  }
}

TEST_CASE("off-hypersurface start") {
  const auto e12 = ConvexBody::ellipsoid(std::vector<double>{1, 2});
  try {
    reeb_flow(e12, 1.1 * first_circle_point(2), 1.0, 4);
    FAIL("expected OffHypersurface");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OffHypersurface);
  }
  CHECK_NOTHROW(hamiltonian_flow(e12, 1.1 * first_circle_point(2), 1.0, 4));
}

TEST_CASE("extended flow equivariance") {
  std::mt19937_64 rng(7);
  const auto dp = ConvexBody::dual_power({1, 2}, 2.0);
  const Vec z = on_level(dp, oracle::random_generic_point(rng, 2));
  for (double l : {0.3, 2.7}) {
    const Trajectory a = hamiltonian_flow(dp, l * z, 0.7, 1);
    const Trajectory b = hamiltonian_flow(dp, z, 0.7, 1);
    CHECK((a.points.back() - l * b.points.back()).norm() < 1e-9 * l);
  }
}

TEST_CASE("linearized flow") {
  const std::vector<double> a{1, 2};
  const auto e12 = ConvexBody::ellipsoid(a);
  std::mt19937_64 rng(9);
  const Vec z0 = on_level(e12, oracle::random_generic_point(rng, 2));
  const LinearizedFlow lin = flow_with_linearization(e12, z0, 2.0);
  for (double t : {0.0, 0.25, 1.0, 1.6, 2.0}) {
    CHECK((lin.path.at(t) - oracle::ellipsoid_linearization(a, t)).norm() < 1e-9);
  }
  CHECK((lin.path.gammas.front() - Mat::Identity(4, 4)).norm() == 0.0);
  const Trajectory tr = reeb_flow(e12, z0, 2.0, 8);
  const SymplecticPath p = linearized_flow(e12, tr, 2.0);
  CHECK((p.at(2.0) - oracle::ellipsoid_linearization(a, 2.0)).norm() < 1e-9);
  CHECK((linearized_flow(e12, tr, 0.0).at(0.0) - Mat::Identity(4, 4)).norm() == 0.0);

  const auto dp = ConvexBody::dual_power({1, 2}, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    const Vec z = on_level(dp, oracle::random_generic_point(rng, 2, 0.4));
    const LinearizedFlow l = flow_with_linearization(dp, z, 1.3);
    CHECK(std::fabs(l.path.gammas.back().determinant() - 1.0) < 1e-7);
    CHECK(l.path.max_symplectic_defect() <= 1e-8);
  }
}

TEST_CASE("energy and symplecticity over one period") {
  std::mt19937_64 rng(10);
  FlowOptions raw;
  raw.project_energy = false;
  for (const auto& body : {ConvexBody::ellipsoid(std::vector<double>{1, 2}),
                           ConvexBody::ellipsoid(std::vector<double>{1, 1.5, 2.5}),
                           ConvexBody::dual_power({1, 2}, 2.0), ConvexBody::dual_power({1, 1.5, 3}, 1.5)}) {
    CAPTURE(body.describe());
    const Vec z = on_level(body, oracle::random_generic_point(rng, body.dim(), 0.4));
    const LinearizedFlow l = flow_with_linearization(body, z, 2.5, raw);
    CHECK(l.trajectory.max_energy_drift <= 1e-8);
    CHECK(l.path.max_symplectic_defect() <= 1e-8);
  }
}

TEST_CASE("shooting") {
  const auto e12 = ConvexBody::ellipsoid(std::vector<double>{1, 2});
  Vec seed = first_circle_point(2);
  seed[1] = 0.01;
  seed[2] = 0.005;
  seed = on_level(e12, seed);
  const OrbitRecord o = find_closed_orbit(e12, seed, 1.05);
  CHECK(std::fabs(o.period - 1.0) < 1e-9);
  CHECK(o.residual <= 1e-9);
  CHECK(o.energy_error <= 1e-8);

  const auto e11 = ConvexBody::ellipsoid(std::vector<double>{1, 1});
  std::mt19937_64 rng(12);
  const Vec s11 = on_level(e11, oracle::random_generic_point(rng, 2));
  CHECK(std::fabs(find_closed_orbit(e11, s11, 1.0).period - 1.0) < 1e-9);

  const auto dp = ConvexBody::dual_power({1, 2}, 2.0);
  SystoleOptions so;
  so.restarts = 2;
  so.compute_index = false;
  const SystoleResult sys = minimize_systole(dp, so);
  const OrbitRecord refined = find_closed_orbit(dp, sys.orbit.initial_point, sys.c0);
  CHECK(refined.residual <= 1e-9);
  CHECK(std::fabs(refined.period - sys.c0) <= 1e-7);
  CHECK(std::fabs(refined.period - 2 / std::sqrt(5.0)) <= 1e-9);

  ShootingOptions hopeless;
  hopeless.max_iterations = 1;
  try {
    find_closed_orbit(e12, on_level(e12, oracle::random_generic_point(rng, 2)), 0.37, hopeless);
    FAIL("expected ShootingDivergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ShootingDivergence);
  }
}

TEST_CASE("trajectory CSV") {
  const auto e12 = ConvexBody::ellipsoid(std::vector<double>{1, 2});
  std::ostringstream os;
  write_trajectory_csv(os, reeb_flow(e12, first_circle_point(2), 1.0, 4));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,x1,y1,x2,y2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}
