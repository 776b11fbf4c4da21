#pragma once

#include <vector>

#include "memdelay/memdelay.hpp"

namespace memdelay::testing {

/// Default desk-scale wave scenario: K modes on (0, pi), exponential kernel
/// mu0 = 0.2, delta = 1, tau = 0.5, dt = 1/512.
inline Scenario wave_scenario(Eigen::Index modes = 16,
                              std::vector<Cycle> cycles = {{2.0, 0.5, 0.3}},
                              bool periodic = true) {
  Schedule s;
  s.mode = FeedbackMode::delayed_feedback;
  s.tau = 0.5;
  s.cycles = std::move(cycles);
  s.periodic = periodic;

  Scenario sc{build_operator(OperatorKind::wave_1d, modes, M_PI),
              validate_kernel(MemoryKernel::exponential_kernel(0.2, 1.0)),
              validate_schedule(std::move(s))};
  sc.initial_position = Eigen::VectorXd::Zero(modes);
  sc.initial_velocity = Eigen::VectorXd::Zero(modes);
  sc.initial_position[0] = 1.0;
  if (modes > 1) sc.initial_position[1] = 0.5;
  if (modes > 2) sc.initial_position[2] = 0.25;
  sc.pre_history = PreHistory::constant_equal_to_initial;
  sc.dt = 1.0 / 512.0;
  sc.history_nodes = 800;
  sc.horizon = 40.0;
  return sc;
}

inline double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace memdelay::testing
