#pragma once

#include <cstdint>
#include <vector>

#include "reeb/convex_body.hpp"
#include "reeb/loop.hpp"
#include "reeb/orbit.hpp"
#include "reeb/reeb_flow.hpp"
#include "reeb/symplectic_index.hpp"

namespace reeb {

/// Symplectic action A(gammadot) = 1/2 int <J gamma, gammadot> = sum_k |v_k|^2 / (4 pi k).
double action(const LoopCoefficients& loop);

/// G(gammadot) = int_0^1 H*(-J gammadot(t)) dt on `nodes` uniform nodes
/// (default 8N).
double dual_energy(const ConvexBody& body, const LoopCoefficients& loop, int nodes = 0);

struct QuotientEvaluation {
  double value = 0.0;    // G / A
  double action = 0.0;
  double energy = 0.0;
  Vec gradient;          // gradient of G / A with respect to the flat coefficients
};

/// Scale-invariant quotient Q = G / A and its gradient on the nodes 8N.
/// `value` is +inf when A <= 0.
QuotientEvaluation clarke_quotient(const ConvexBody& body, const LoopCoefficients& loop);

struct SystoleOptions {
  int mode_cutoff = 64;
  int restarts = 16;
  std::uint64_t seed = 1;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-10;    // target
  double acceptance_tolerance = 1e-8;   // below this the run counts as converged
  int lbfgs_memory = 12;
  bool compute_index = true;
  bool parallel = false;
};

struct RestartOutcome {
  int ordinal = 0;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SystoleResult {
  double c0 = 0.0;
  OrbitRecord orbit;
  int best_restart = 0;
  std::vector<RestartOutcome> restarts;
};

/// Minimises G / A over loops with positive action from random k in {+-1, +-2}
/// starts; the reported value is the minimum over restarts (ties broken by
/// restart ordinal). Throws Error(NoPositiveActionStart) if a restart cannot
/// draw a start with A > 0 and NonConvergenceError if no restart reaches the
/// acceptance tolerance.
SystoleResult minimize_systole(const ConvexBody& body, const SystoleOptions& options = {});

/// Rotates the loop in time so the first nonzero mode (ordered 1, -1, 2, -2, ...)
/// has a real-positive first nonzero component.
LoopCoefficients normalize_phase(const LoopCoefficients& loop);

struct RecoverOptions {
  int samples = 0;                  // orbit samples (default 8N)
  double residual_tolerance = 1e-6;
};

/// Orbit t -> c gamma(t / c) from a Clarke critical point, with c gamma =
/// grad H*(-J gammadot). The loop is rescaled to G = 1; when `period` is not
/// positive, c = 1 / A is used. Throws Error(ResidualTooLarge).
OrbitRecord recover_orbit(const ConvexBody& body, const LoopCoefficients& loop, double period = 0.0,
                          const RecoverOptions& options = {});

/// Morse index and nullity of the orbit from d phi_H^t(z0), t in [0, c].
IndexResult orbit_index(const ConvexBody& body, const OrbitRecord& orbit, const FlowOptions& flow = {},
                        const CrossingOptions& crossing = {});

}  // namespace reeb
