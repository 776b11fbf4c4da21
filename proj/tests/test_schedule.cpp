#include <doctest.h>

#include <cmath>
#include <random>

#include "memdelay/errors.hpp"
#include "memdelay/schedule.hpp"

using namespace memdelay;

namespace {

Schedule make(double tau, std::vector<Cycle> cycles,
              FeedbackMode mode = FeedbackMode::delayed_feedback) {
  Schedule s;
  s.tau = tau;
  s.mode = mode;
  s.cycles = std::move(cycles);
  return s;
}

}  // namespace

TEST_CASE("endpoints are cumulative sums and short-delay flags are per cycle") {
  const auto v = validate_schedule(make(1.0, {{2.0, 0.5, 0.3}}));
  CHECK(v.endpoints() == std::vector<double>{0.0, 2.0, 2.5});
  CHECK(v.short_delay_flags() == std::vector<bool>{true});  // 0.5 <= 1

  const auto w = validate_schedule(make(1.0, {{2.0, 2.0, 0.3}}));
  CHECK(w.short_delay_flags() == std::vector<bool>{false});  // 2 > 1
}

TEST_CASE("off interval shorter than the delay is rejected") {
  try {
    validate_schedule(make(1.0, {{0.5, 1.0, 0.3}}));
    FAIL("expected OffIntervalShorterThanDelay");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OffIntervalShorterThanDelay);
  }
  // anti-damping mode has no such constraint
  CHECK_NOTHROW(
      validate_schedule(make(0.0, {{0.5, 1.0, 0.3}}, FeedbackMode::anti_damping)));
}

TEST_CASE("positivity of lengths and bounds") {
  CHECK_THROWS_AS(validate_schedule(make(1.0, {{2.0, 0.0, 0.3}})), Error);
  CHECK_THROWS_AS(validate_schedule(make(1.0, {{2.0, 1.0, 0.0}})), Error);
  CHECK_THROWS_AS(validate_schedule(make(1.0, {})), Error);
}

TEST_CASE("coefficient_at: off, on, scaled profile, beyond schedule") {
  auto s = make(0.5, {{2.0, 1.0, 0.3}});
  const auto v = validate_schedule(s);
  CHECK(v.coefficient_at(1.0) == 0.0);
  CHECK(v.coefficient_at(2.5) == doctest::Approx(0.3));
  CHECK_THROWS_AS((void)v.coefficient_at(3.5), Error);
  CHECK(v.coefficient_extended(3.5) == 0.0);

  s.profile = CoefficientProfile::scaled;
  s.profile_fraction = 0.5;
  const auto vs = validate_schedule(s);
  CHECK(vs.coefficient_at(2.5) == doctest::Approx(0.15));
}

TEST_CASE("periodic extension repeats the last cycle") {
  auto s = make(0.5, {{2.0, 1.0, 0.3}});
  s.periodic = true;
  const auto v = validate_schedule(s);
  CHECK(v.coefficient_at(3.0 + 1.0) == 0.0);                 // off part of cycle 1
  CHECK(v.coefficient_at(3.0 + 2.5) == doctest::Approx(0.3));  // on part of cycle 1
  CHECK(v.cycle_start(3) == doctest::Approx(9.0));
  CHECK(v.cycle(7).bound == doctest::Approx(0.3));
}

TEST_CASE("geometric bounds halve per cycle") {
  auto s = make(0.5, {{2.0, 1.0, 2.0}});
  s.geometric = GeometricBounds{2.0, 0.5};
  const auto v = validate_schedule(s);
  CHECK(v.cycle(0).bound == doctest::Approx(2.0));
  CHECK(v.cycle(3).bound == doctest::Approx(0.25));
  CHECK(v.coefficient_at(3.0 * 2 + 2.5) == doctest::Approx(0.5));  // cycle 2 on part
  CHECK(v.cycle_start(2) == doctest::Approx(6.0));
}

TEST_CASE("off intervals are exactly zero and on values respect the bound") {
  auto s = make(0.5, {{1.0, 0.75, 0.4}, {2.0, 1.5, 0.9}});
  const auto v = validate_schedule(s);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pick(0.0, v.endpoints().back() - 1e-9);
  for (int i = 0; i < 2000; ++i) {
    const double t = pick(rng);
    const double b = v.coefficient_at(t);
    // locate the interval by hand
    bool on = (t >= 1.0 && t < 1.75) || (t >= 3.75 && t < 5.25);
    if (on) {
      CHECK(b != 0.0);
      const double bound = (t < 2.0) ? 0.4 : 0.9;
      CHECK(std::abs(b) <= bound);
    } else {
      CHECK(b == 0.0);
    }
  }
}

TEST_CASE("endpoint differences reproduce the interval lengths exactly") {
  auto s = make(0.25, {{1.0, 0.5, 0.1}, {0.75, 0.3, 0.2}, {2.0, 1.0, 0.4}});
  const auto v = validate_schedule(s);
  const std::vector<double> lens = {1.0, 0.5, 0.75, 0.3, 2.0, 1.0};
  REQUIRE(v.endpoints().size() == lens.size() + 1);
  for (std::size_t i = 0; i < lens.size(); ++i)
    CHECK(v.endpoints()[i + 1] - v.endpoints()[i] == doctest::Approx(lens[i]));
}
