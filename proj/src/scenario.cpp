#include "memdelay/scenario.hpp"

#include <cmath>
#include <sstream>

#include "memdelay/errors.hpp"

namespace memdelay {

Eigen::Index Scenario::delay_steps() const {
  const double ratio = schedule.tau() / dt;
  return static_cast<Eigen::Index>(std::llround(ratio));
}

void validate_scenario(const Scenario& scenario) {
  const Eigen::Index K = scenario.modes();
  if (K < 1) throw Error(ErrorCode::InvalidScenario, "operator has no modes");
  if (scenario.initial_position.size() != K ||
      scenario.initial_velocity.size() != K)
    throw Error(ErrorCode::InconsistentModeCount,
                "initial data length differs from the operator mode count");
  if (scenario.pre_history == PreHistory::tabulated) {
    if (scenario.history_table.size() < 2)
      throw Error(ErrorCode::InvalidScenario,
                  "tabulated pre-history needs >= 2 samples");
    double prev = scenario.history_table.front().s;
    if (scenario.history_table.back().s != 0.0)
      throw Error(ErrorCode::InvalidScenario,
                  "pre-history table must end at s = 0");
    for (std::size_t i = 0; i < scenario.history_table.size(); ++i) {
      const auto& h = scenario.history_table[i];
      if (h.s > 0.0)
        throw Error(ErrorCode::InvalidScenario, "pre-history times must be <= 0");
      if (i > 0 && h.s <= prev)
        throw Error(ErrorCode::InvalidScenario, "pre-history times must increase");
      if (h.position.size() != K)
        throw Error(ErrorCode::InconsistentModeCount,
                    "pre-history sample length differs from mode count");
      prev = h.s;
    }
  }
  if (scenario.dt <= 0.0)
    throw Error(ErrorCode::InvalidScenario, "dt must be positive");
  if (scenario.horizon < 0.0)
    throw Error(ErrorCode::InvalidScenario, "horizon must be nonnegative");
  if (scenario.history_nodes < 2)
    throw Error(ErrorCode::InvalidScenario, "need at least 2 history nodes");

  const double tau = scenario.schedule.tau();
  const double ratio = tau / scenario.dt;
  if (tau > 0.0 && std::abs(ratio - std::llround(ratio)) > 1e-9 * ratio + 1e-12) {
    std::ostringstream os;
    os << "tau = " << tau << " is not an integer multiple of dt = " << scenario.dt;
    throw Error(ErrorCode::InvalidScenario, os.str());
  }
  if (scenario.schedule.mode() == FeedbackMode::delayed_feedback && tau <= 0.0)
    throw Error(ErrorCode::InvalidScenario, "delayed feedback requires tau > 0");

  // transport CFL for the upwind eta update
  if (scenario.backend == Backend::dafermos &&
      scenario.s_spacing() < scenario.dt)
    throw Error(ErrorCode::InvalidScenario,
                "s-grid spacing below dt violates the transport CFL");
  if (scenario.backend == Backend::ode && !scenario.kernel.is_exponential())
    throw Error(ErrorCode::KernelNotExponential,
                "the ODE backend requires an exponential kernel");
}

}  // namespace memdelay
