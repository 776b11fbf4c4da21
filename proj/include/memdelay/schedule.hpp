#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace memdelay {

enum class FeedbackMode { delayed_feedback, anti_damping };
enum class CoefficientProfile { constant_at_bound, scaled };

/// One off/on pair: the coefficient is zero for off_len, then bounded by
/// `bound` for on_len.
struct Cycle {
  double off_len = 0.0;  // T_{2n}
  double on_len = 0.0;   // T_{2n+1}
  double bound = 0.0;    // b_{2n+1} (or k_{2n+1} in anti-damping mode)
};

/// Closed-form bound sequence b_{2n+1} = b0 * ratio^n with the cycle lengths
/// taken from the single listed cycle.
struct GeometricBounds {
  double b0 = 0.0;
  double ratio = 0.0;
};

struct Schedule {
  FeedbackMode mode = FeedbackMode::delayed_feedback;
  double tau = 0.0;  // delay; unused by anti_damping dynamics but kept for flags
  CoefficientProfile profile = CoefficientProfile::constant_at_bound;
  double profile_fraction = 1.0;  // scaled profile only, in (0, 1]
  std::vector<Cycle> cycles;
  bool periodic = false;  // last cycle repeats forever
  std::optional<GeometricBounds> geometric;
};

/// Schedule with endpoints resolved and the per-cycle short-delay regime
/// flags (T_{2n+1} <= tau) computed.
class ValidatedSchedule {
 public:
  const Schedule& schedule() const { return sched_; }
  FeedbackMode mode() const { return sched_.mode; }
  double tau() const { return sched_.tau; }
  std::size_t listed_cycles() const { return sched_.cycles.size(); }
  bool unbounded() const { return sched_.periodic || sched_.geometric.has_value(); }

  /// Endpoints t_0 = 0 < t_1 < ... for the listed cycles (2N+1 values).
  const std::vector<double>& endpoints() const { return endpoints_; }
  const std::vector<bool>& short_delay_flags() const { return short_delay_; }

  /// Cycle n, extended past the list for periodic/geometric schedules.
  Cycle cycle(std::size_t n) const;
  /// Start time t_{2n} of cycle n.
  double cycle_start(std::size_t n) const;

  /// Coefficient value b(t) (or k(t)): zero on off intervals, the profile
  /// value on on intervals. Throws BeyondSchedule past a finite schedule.
  double coefficient_at(double t) const;

  /// Like coefficient_at but zero before t = 0 and past a finite schedule.
  double coefficient_extended(double t) const;

  /// Magnitude actually used inside cycle n's on interval.
  double profile_value(double bound) const;

  friend ValidatedSchedule validate_schedule(Schedule sched);

 private:
  explicit ValidatedSchedule(Schedule sched);
  Schedule sched_;
  std::vector<double> endpoints_;
  std::vector<bool> short_delay_;
};

/// Computes endpoints, enforces positivity and (in delayed mode) the
/// constraint tau <= T_{2n} on every off interval.
ValidatedSchedule validate_schedule(Schedule sched);

}  // namespace memdelay
