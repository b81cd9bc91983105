#pragma once

// Reference computations that do not go through the library code paths they
// check.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "reeb/linalg.hpp"
#include "reeb/symplectic_index.hpp"

namespace oracle {

inline std::string data_path(const std::string& name) { return std::string(REEB_TEST_DATA_DIR) + "/" + name; }

/// A reduced fraction p/q with small integers.
struct Frac {
  long long p;
  long long q;
};

/// All distinct m a_i <= cutoff with the count of dividing coordinates, by
/// clearing denominators and enumerating integers.
std::vector<std::pair<Frac, int>> brute_force_spectrum(const std::vector<Frac>& a, Frac cutoff);

/// First m terms of the multiplicity-expanded spectrum.
std::vector<Frac> brute_force_invariants(const std::vector<Frac>& a, int m);

/// Closed-form ellipsoid Reeb flow: z_i -> exp(2 pi i t / a_i) z_i.
reeb::Vec ellipsoid_flow(const std::vector<double>& a, const reeb::Vec& z, double t);

/// Linearization of the ellipsoid flow, block rotations by 2 pi t / a_i.
reeb::Mat ellipsoid_linearization(const std::vector<double>& a, double t);

/// Index and nullity of the ellipsoid orbit of period c by listing the
/// interior return times of each rotation block with floating point times.
std::pair<int, int> ellipsoid_index_by_return_times(const std::vector<double>& a, double c);

/// Random smooth periodic path t -> scale (B(t) B(t)^T + eps I), B a
/// trigonometric polynomial with `harmonics` terms and entries of size
/// `amplitude`. Smaller scales make the path wind faster.
reeb::PathGenerator random_generator(std::mt19937_64& rng, int n, double scale = 0.1, int harmonics = 2,
                                     double amplitude = 0.5, double eps = 0.05);

/// Random point of R^{2n} with every complex block of modulus at least `floor`.
reeb::Vec random_generic_point(std::mt19937_64& rng, int n, double floor = 0.2);

std::string run(const std::vector<std::string>& args, int* exit_code, std::string* err = nullptr);

}  // namespace oracle
