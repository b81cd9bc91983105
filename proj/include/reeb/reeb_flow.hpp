#pragma once

#include <iosfwd>
#include <vector>

#include "reeb/convex_body.hpp"
#include "reeb/orbit.hpp"
#include "reeb/symplectic_path.hpp"

namespace reeb {

struct Trajectory {
  std::vector<double> times;
  std::vector<PointR2n> points;
  double energy = 0.0;            // H(z0)
  double max_energy_drift = 0.0;  // max_t |H(z(t)) - H(z0)| / H(z0), measured before projection
};

struct FlowOptions {
  double tolerance = 1e-13;         // integrator abs/rel tolerance
  double drift_tolerance = 1e-8;    // relative energy drift that raises EnergyDrift
  double symplectic_tolerance = 1e-8;
  bool project_energy = true;       // radial projection back onto the energy level after each step
  int samples_per_unit = 2048;      // density of the sampled symplectic path
};

/// Extended Hamiltonian flow z' = J grad H(z) for any z0 != 0; `steps` uniform
/// output intervals on [0, T]. The state is integrated in the dual variable
/// w = grad H(z), so w' = (Hess H*(w))^{-1} J w and z = grad H*(w).
Trajectory hamiltonian_flow(const ConvexBody& body, const PointR2n& z0, double T, int steps,
                            const FlowOptions& options = {});

/// Reeb flow on Y. Throws Error(OffHypersurface) unless |H(z0) - 1| <= 1e-8 and
/// Error(EnergyDrift) when conservation fails.
Trajectory reeb_flow(const ConvexBody& body, const PointR2n& z0, double T, int steps,
                     const FlowOptions& options = {});

struct LinearizedFlow {
  Trajectory trajectory;
  SymplecticPath path;  // Gamma(t) = d phi_H^t(z0)
};

/// Base orbit and variational equation Gamma' = J Hess H(z(t)) Gamma integrated
/// as one combined state. Throws Error(SymplecticityLoss) when a sample leaves
/// Sp(2n) by more than the tolerance.
LinearizedFlow flow_with_linearization(const ConvexBody& body, const PointR2n& z0, double T,
                                       const FlowOptions& options = {});

/// d phi_H^t along the trajectory's initial point, over [0, T].
SymplecticPath linearized_flow(const ConvexBody& body, const Trajectory& trajectory, double T,
                               const FlowOptions& options = {});

struct ShootingOptions {
  int max_iterations = 40;
  double closing_tolerance = 1e-9;
  int output_samples = 256;
  FlowOptions flow;
};

/// Newton shooting on (phi^T(z) - z, H(z) - 1, <z - seed, X_H(seed)>) with the
/// period T as an unknown. Throws Error(ShootingDivergence).
OrbitRecord find_closed_orbit(const ConvexBody& body, const PointR2n& seed, double period_guess,
                              const ShootingOptions& options = {});

/// CSV with header "t,x1,y1,...,xn,yn".
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace reeb
