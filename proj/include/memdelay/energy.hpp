#pragma once

#include "memdelay/kernel.hpp"
#include "memdelay/schedule.hpp"
#include "memdelay/scenario.hpp"
#include "memdelay/spectrum.hpp"
#include "memdelay/state.hpp"

namespace memdelay {

/// Standard energy E_S = kinetic + (1-mu_tilde)/2 |u|_V^2 + memory term,
/// with the memory term integrated by trapezoid on the state's s-grid.
double standard_energy(const ModalState& state, const ValidatedKernel& kernel,
                       const OperatorSpec& op);

/// Augmented energy E = E_S + (1/2) int_{t-tau}^t |b(s+tau)| |u_t(s)|^2 ds,
/// the sliding window integrated by trapezoid over the delay buffer.
double full_energy(const ModalState& state, const ValidatedKernel& kernel,
                   const OperatorSpec& op, const ValidatedSchedule& schedule,
                   double dt);

/// All components at once (one pass over the state).
EnergySample energy_sample(const ModalState& state, const ValidatedKernel& kernel,
                           const OperatorSpec& op, const ValidatedSchedule& schedule,
                           double dt);

/// Per-step samples of a trajectory (already computed during simulation).
const std::vector<EnergySample>& energy_series(const Trajectory& trajectory);

}  // namespace memdelay
