#include "memdelay/schedule.hpp"

#include <cmath>
#include <sstream>

#include "memdelay/errors.hpp"

namespace memdelay {

ValidatedSchedule::ValidatedSchedule(Schedule sched) : sched_(std::move(sched)) {
  endpoints_.push_back(0.0);
  for (const Cycle& c : sched_.cycles) {
    endpoints_.push_back(endpoints_.back() + c.off_len);
    endpoints_.push_back(endpoints_.back() + c.on_len);
    short_delay_.push_back(c.on_len <= sched_.tau);
  }
}

Cycle ValidatedSchedule::cycle(std::size_t n) const {
  const std::size_t listed = sched_.cycles.size();
  if (sched_.geometric) {
    Cycle c = sched_.cycles.front();
    c.bound = sched_.geometric->b0 * std::pow(sched_.geometric->ratio,
                                              static_cast<double>(n));
    return c;
  }
  if (n < listed) return sched_.cycles[n];
  if (sched_.periodic) return sched_.cycles.back();
  throw Error(ErrorCode::BeyondSchedule, "cycle index past a finite schedule");
}

double ValidatedSchedule::cycle_start(std::size_t n) const {
  const std::size_t listed = sched_.cycles.size();
  if (sched_.geometric) {
    const Cycle& c0 = sched_.cycles.front();
    return static_cast<double>(n) * (c0.off_len + c0.on_len);
  }
  if (n < listed) return endpoints_[2 * n];
  if (sched_.periodic) {
    const Cycle& last = sched_.cycles.back();
    return endpoints_[2 * listed] +
           static_cast<double>(n - listed) * (last.off_len + last.on_len);
  }
  throw Error(ErrorCode::BeyondSchedule, "cycle index past a finite schedule");
}

double ValidatedSchedule::profile_value(double bound) const {
  if (sched_.profile == CoefficientProfile::scaled)
    return sched_.profile_fraction * bound;
  return bound;
}

double ValidatedSchedule::coefficient_at(double t) const {
  if (t < 0.0) throw Error(ErrorCode::NegativeArgument, "t < 0");
  const std::size_t listed = sched_.cycles.size();
  std::size_t n;
  double local;
  const double span = endpoints_.back();
  if (t < span && !sched_.geometric) {
    // locate listed cycle
    n = 0;
    while (n + 1 < listed && t >= endpoints_[2 * (n + 1)]) ++n;
    local = t - endpoints_[2 * n];
  } else if (unbounded()) {
    if (sched_.geometric) {
      const Cycle& c0 = sched_.cycles.front();
      const double period = c0.off_len + c0.on_len;
      n = static_cast<std::size_t>(std::floor(t / period));
      local = t - static_cast<double>(n) * period;
    } else {
      const Cycle& last = sched_.cycles.back();
      const double period = last.off_len + last.on_len;
      const double tail = t - span;
      n = listed - 1 + 1 + static_cast<std::size_t>(std::floor(tail / period));
      local = tail - std::floor(tail / period) * period;
    }
  } else {
    throw Error(ErrorCode::BeyondSchedule, "t past a finite schedule");
  }
  const Cycle c = cycle(n);
  if (local < c.off_len) return 0.0;
  return profile_value(c.bound);
}

double ValidatedSchedule::coefficient_extended(double t) const {
  if (t < 0.0) return 0.0;
  if (!unbounded() && t >= endpoints_.back()) return 0.0;
  return coefficient_at(t);
}

ValidatedSchedule validate_schedule(Schedule sched) {
  if (sched.cycles.empty())
    throw Error(ErrorCode::NonPositiveLength, "schedule has no cycles");
  if (sched.tau < 0.0)
    throw Error(ErrorCode::NegativeArgument, "tau < 0");
  if (sched.geometric) {
    if (sched.cycles.size() != 1)
      throw Error(ErrorCode::NonPositiveLength,
                  "geometric bounds need exactly one listed cycle");
    if (sched.geometric->b0 <= 0.0 || sched.geometric->ratio <= 0.0)
      throw Error(ErrorCode::NonPositiveBound, "geometric b0/ratio must be positive");
  }
  if (sched.profile == CoefficientProfile::scaled &&
      (sched.profile_fraction <= 0.0 || sched.profile_fraction > 1.0))
    throw Error(ErrorCode::NonPositiveBound, "profile fraction must be in (0,1]");
  std::size_t idx = 0;
  for (const Cycle& c : sched.cycles) {
    if (c.off_len <= 0.0 || c.on_len <= 0.0)
      throw Error(ErrorCode::NonPositiveLength, "interval lengths must be positive");
    if (c.bound <= 0.0)
      throw Error(ErrorCode::NonPositiveBound, "coefficient bound must be positive");
    if (sched.mode == FeedbackMode::delayed_feedback && c.off_len < sched.tau) {
      std::ostringstream os;
      os << "cycle " << idx << ": T_even = " << c.off_len << " < tau = "
         << sched.tau << " (requires tau <= T_2n)";
      throw Error(ErrorCode::OffIntervalShorterThanDelay, os.str());
    }
    ++idx;
  }
  return ValidatedSchedule(std::move(sched));
}

}  // namespace memdelay
