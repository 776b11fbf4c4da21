#pragma once

#include "memdelay/scenario.hpp"
#include "memdelay/state.hpp"

namespace memdelay {

/// Builds the t = 0 state: eta grid from eta_0(s) = u0(0) - u0(-s), delay
/// buffer from the pre-history velocities, and (ODE backend) the memory
/// integrals w_k = int mu(s) u0_k(-s) ds.
ModalState init_state(const Scenario& scenario);

/// Total stiffness + memory modal acceleration: -(1-mu_tilde)*lambda*u minus
/// the history convolution (Dafermos grid) or -lambda*u + lambda*w (ODE
/// backend). The two agree on consistent states.
Eigen::VectorXd memory_force(const ModalState& state, const ValidatedKernel& kernel,
                             const OperatorSpec& op, Backend backend);

/// Exact lookup u_t(t - tau); the buffer spans [t - tau, t] with spacing dt.
const Eigen::VectorXd& delayed_velocity(const ModalState& state);

/// Advances one step dt: trapezoidal (semi-implicit) update of (u, v) with
/// the memory/feedback forces averaged over the step, first-order upwind
/// transport of eta in s (or the exact exponential integrator for w), and a
/// buffer rotation. Throws NonFiniteState on numerical blow-up.
void step(ModalState& state, const Scenario& scenario);

/// Runs step over [0, horizon], recording an energy sample every step and
/// state snapshots at the configured stride. Sets Trajectory::diverged and
/// stops early when E_S exceeds 1e12 * E_S(0).
Trajectory simulate(const Scenario& scenario);

/// Independent oracle: the same scenario forced to the ODE backend at half
/// the time step. Requires an exponential kernel.
Trajectory simulate_ode_oracle(const Scenario& scenario);

}  // namespace memdelay
