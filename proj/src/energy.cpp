#include "memdelay/energy.hpp"

#include <cmath>

#include "memdelay/errors.hpp"

namespace memdelay {

namespace {

// 1/2 sum_k lambda_k int mu(s) eta_k(s)^2 ds, trapezoid on the state's grid.
double memory_energy(const ModalState& state, const ValidatedKernel& kernel,
                     const OperatorSpec& op) {
  if (state.m.size() > 0)  // ODE backend: exact quadratic moments
    return 0.5 * state.m.dot(op.eigenvalues);
  const Eigen::Index J = state.eta.cols();
  if (J < 2) return 0.0;
  const double ds = kernel.s_max() / static_cast<double>(J - 1);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < J; ++j) {
    const double wq = (j == 0 || j == J - 1) ? 0.5 * ds : ds;
    const double mu = kernel.eval(static_cast<double>(j) * ds);
    acc += wq * mu * state.eta.col(j).cwiseAbs2().dot(op.eigenvalues);
  }
  return 0.5 * acc;
}

double delay_energy(const ModalState& state, const ValidatedSchedule& schedule,
                    double dt) {
  const Eigen::Index N = state.delay_steps;
  if (N == 0) return 0.0;
  if (static_cast<Eigen::Index>(state.delay_buf.size()) != N + 1)
    throw Error(ErrorCode::BufferUnderfilled, "delay buffer is not full");
  // buffer entry i sits at s = t - tau + i*dt; the integrand weight is
  // |b(s + tau)|
  double acc = 0.0;
  for (Eigen::Index i = 0; i <= N; ++i) {
    const double wq = (i == 0 || i == N) ? 0.5 * dt : dt;
    const double s = state.t - schedule.tau() + static_cast<double>(i) * dt;
    const double b = std::abs(schedule.coefficient_extended(s + schedule.tau()));
    acc += wq * b * state.delay_buf[static_cast<std::size_t>(i)].squaredNorm();
  }
  return 0.5 * acc;
}

}  // namespace

EnergySample energy_sample(const ModalState& state, const ValidatedKernel& kernel,
                           const OperatorSpec& op, const ValidatedSchedule& schedule,
                           double dt) {
  EnergySample e;
  e.t = state.t;
  e.kinetic = 0.5 * state.v.squaredNorm();
  e.potential =
      0.5 * (1.0 - kernel.mu_tilde()) * state.u.cwiseAbs2().dot(op.eigenvalues);
  e.memory_term = memory_energy(state, kernel, op);
  e.standard = e.kinetic + e.potential + e.memory_term;
  e.delay_term = delay_energy(state, schedule, dt);
  e.full = e.standard + e.delay_term;
  return e;
}

double standard_energy(const ModalState& state, const ValidatedKernel& kernel,
                       const OperatorSpec& op) {
  return 0.5 * state.v.squaredNorm() +
         0.5 * (1.0 - kernel.mu_tilde()) * state.u.cwiseAbs2().dot(op.eigenvalues) +
         memory_energy(state, kernel, op);
}

double full_energy(const ModalState& state, const ValidatedKernel& kernel,
                   const OperatorSpec& op, const ValidatedSchedule& schedule,
                   double dt) {
  return standard_energy(state, kernel, op) + delay_energy(state, schedule, dt);
}

const std::vector<EnergySample>& energy_series(const Trajectory& trajectory) {
  return trajectory.energies;
}

}  // namespace memdelay
