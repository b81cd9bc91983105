#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reeb/linalg.hpp"
#include "reeb/symplectic_path.hpp"

namespace reeb {

/// t -> A(t), a path of symmetric positive-definite 2n x 2n matrices on [0, 1].
struct PathGenerator {
  std::function<Mat(double)> A;
  int dim = 1;
  std::string description;
};

PathGenerator constant_generator(const Mat& a, std::string description = "constant");
/// A(t) - lambda I.
PathGenerator shifted(const PathGenerator& gen, double lambda);

struct CrossingRecord {
  double t = 0.0;
  int kernel_dim = 0;
  bool refined = true;  // false when two crossings closer than the grid step were merged
};

struct IndexResult {
  int index = 0;
  int nullity = 0;
  std::vector<CrossingRecord> crossings;  // interior crossings, then the endpoint when closed
};

struct CrossingOptions {
  double rank_tolerance = 1e-6;  // singular values below tol * ||Gamma|| count as kernel
  double time_tolerance = 1e-10; // width of the final refinement bracket
  int max_refinement_steps = 200;
};

/// Gamma_A' = J A(t)^{-1} Gamma_A, Gamma_A(0) = I on [0, tau]. Throws
/// Error(NonPositiveDefinite) when a Cholesky factorisation of A(t) fails.
SymplecticPath path_from_generator(const PathGenerator& gen, double tau, int samples_per_unit = 2048);

/// Same ODE from an arbitrary start Gamma(t0) = g0, integrated towards t1
/// (t1 < t0 allowed).
SymplecticPath path_from_generator(const PathGenerator& gen, double t0, double t1, const Mat& g0,
                                   int samples_per_unit = 2048);

/// dim ker(G - I) under the rank tolerance.
int kernel_dimension(const Mat& g, double rank_tolerance = 1e-6);

/// Every t in (path start, path end] where ker(Gamma(t) - I) != 0. Detection
/// sweeps sigma_min(Gamma - I) / ||Gamma|| over the path samples and refines
/// each grid-local minimum by golden-section search. Throws
/// Error(UnresolvedCrossing) when a refinement cannot isolate a minimum.
std::vector<CrossingRecord> count_crossings(const SymplecticPath& path, const CrossingOptions& options = {});

/// index = sum of interior kernel dimensions, nullity = endpoint kernel - 1.
/// Throws Error(NotClosedOrbit) when the endpoint has trivial kernel.
IndexResult morse_index_nullity(const SymplecticPath& path, const CrossingOptions& options = {});

/// Matrix of the index form h_{A,tau} on the Fourier modes 0 < |k| <= N of
/// L^2_0([0, tau]), in the basis t -> exp(2 pi k t J / tau) e_j.
Mat hessian_form_matrix(const PathGenerator& gen, double tau, int mode_cutoff);

/// Number of negative eigenvalues of the truncated index form (eigenvalues
/// within 1e-10 * spectral radius of zero are treated as zero).
int hessian_form_negative_count(const PathGenerator& gen, double tau, int mode_cutoff);

/// Eigenvalues of the truncated operator H_{A,tau} (the form matrix divided
/// by the Gram factor tau), ascending.
Vec hessian_form_eigenvalues(const PathGenerator& gen, double tau, int mode_cutoff);

/// True iff ker(Gamma_{A - lambda I}(tau) - I) != 0, i.e. lambda is an
/// eigenvalue of H_{A,tau}.
bool eigenspace_shooting_check(const PathGenerator& gen, double tau, double lambda,
                               double rank_tolerance = 1e-6);

/// sigma_min(Gamma_{A - lambda I}(tau) - I) / ||Gamma||, the quantity whose
/// zeros the shooting check detects.
double eigenspace_shooting_defect(const PathGenerator& gen, double tau, double lambda);

}  // namespace reeb
