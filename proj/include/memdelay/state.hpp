#pragma once

#include <Eigen/Core>
#include <deque>
#include <vector>

namespace memdelay {

/// Per-mode phase state at one time instant. eta is the relative-history
/// grid eta_k(s_j) = u_k(t) - u_k(t - s_j) on the uniform s-grid (Dafermos
/// backend). The ODE backend carries no grid: w holds the memory integrals
/// that drive the dynamics and m the quadratic moments int mu eta^2 ds used
/// for energy reporting, both advanced by exact exponential integrators.
struct ModalState {
  double t = 0.0;
  Eigen::VectorXd u;   // modal displacements, length K
  Eigen::VectorXd v;   // modal velocities, length K
  Eigen::MatrixXd eta; // K x J history grid, column 0 (s = 0) identically zero
  Eigen::VectorXd w;   // ODE backend memory integrals (empty otherwise)
  Eigen::VectorXd m;   // ODE backend memory energy moments (empty otherwise)

  /// Velocities at t - N*dt ... t, uniformly spaced; front() is v(t - tau).
  std::deque<Eigen::VectorXd> delay_buf;
  Eigen::Index delay_steps = 0;
};

struct EnergySample {
  double t = 0.0;
  double standard = 0.0;   // E_S
  double full = 0.0;       // E = E_S + delay term
  double kinetic = 0.0;
  double potential = 0.0;
  double memory_term = 0.0;
  double delay_term = 0.0;
};

struct Trajectory {
  std::vector<EnergySample> energies;  // one per step, first at t = 0
  std::vector<ModalState> snapshots;   // at the configured stride (may be empty)
  bool diverged = false;
  double initial_energy = 0.0;  // E_S(0)
};

}  // namespace memdelay
