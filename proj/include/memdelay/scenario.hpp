#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <vector>

#include "memdelay/kernel.hpp"
#include "memdelay/schedule.hpp"
#include "memdelay/spectrum.hpp"

namespace memdelay {

enum class PreHistory { zero, constant_equal_to_initial, tabulated };
enum class Backend { dafermos, ode };

/// Modal pre-history sample: position coefficients at a time s in [-s_max, 0].
struct HistorySample {
  double s = 0.0;  // nonpositive
  Eigen::VectorXd position;
};

/// Full problem data for one run, validated by validate_scenario.
struct Scenario {
  OperatorSpec op;
  ValidatedKernel kernel;
  ValidatedSchedule schedule;
  Eigen::VectorXd initial_position;  // u0(., 0) modal coefficients
  Eigen::VectorXd initial_velocity;  // u1 modal coefficients
  PreHistory pre_history = PreHistory::zero;
  std::vector<HistorySample> history_table;  // tabulated pre-history only

  double dt = 1.0 / 512.0;
  double horizon = 40.0;
  Eigen::Index history_nodes = 400;  // J points on the s-grid [0, s_max]
  Backend backend = Backend::dafermos;
  Eigen::Index snapshot_stride = 0;  // 0: no state snapshots
  bool feedback_enabled = true;      // false forces b == 0 (calibration runs)

  Eigen::Index modes() const { return op.modes(); }
  double s_spacing() const {
    return kernel.s_max() / static_cast<double>(history_nodes - 1);
  }
  /// Delay expressed in steps; tau must be an exact multiple of dt.
  Eigen::Index delay_steps() const;
};

/// Checks dimension consistency, dt | tau, and the transport CFL
/// (s-grid spacing >= dt).
void validate_scenario(const Scenario& scenario);

}  // namespace memdelay
