#include <doctest.h>

#include <string>

#include "memdelay/config.hpp"
#include "memdelay/errors.hpp"

using namespace memdelay;

namespace {

const char* kBase = R"(# comment line
[operator]
kind = wave_1d
modes = 3
length = 3.14159265358979323846

[kernel]
mu0 = 0.2
delta = 1.0

[schedule]
tau = 0.5
cycles = 2.0, 0.5, 0.3
periodic = true

[initial]
position = 1, 0.5, 0.25
velocity = 0, 0, 0

[solver]
dt = 0.001953125
horizon = 40
)";

}  // namespace

TEST_CASE("base scenario parses with the documented values") {
  const auto loaded = parse_scenario(kBase);
  const Scenario& sc = loaded.scenario;
  CHECK(sc.modes() == 3);
  CHECK(sc.op.eigenvalues[1] == doctest::Approx(4.0));
  CHECK(sc.kernel.mu_tilde() == doctest::Approx(0.2));
  CHECK(sc.schedule.tau() == 0.5);
  CHECK(sc.schedule.schedule().periodic);
  CHECK(sc.schedule.cycle(0).bound == 0.3);
  CHECK(sc.initial_position[2] == 0.25);
  CHECK(sc.dt == 0.001953125);
  CHECK(sc.horizon == 40.0);
  CHECK(sc.pre_history == PreHistory::zero);       // default
  CHECK(sc.backend == Backend::dafermos);          // default
  CHECK(sc.history_nodes == 400);                  // default
  CHECK(!loaded.sweep.has_value());
}

TEST_CASE("solver and schedule options") {
  std::string text = kBase;
  text += R"(
[sweep]
bounds = 0.1, 0.3
on_lengths = 0.25, 0.5, 1.0
)";
  text.replace(text.find("periodic = true"), 15, "periodic = false");
  const auto loaded = parse_scenario(text);
  REQUIRE(loaded.sweep.has_value());
  CHECK(loaded.sweep->bounds == std::vector<double>{0.1, 0.3});
  CHECK(loaded.sweep->on_lengths.size() == 3);
}

TEST_CASE("tabulated kernel, custom operator, scaled profile") {
  const char* text = R"(
[operator]
kind = custom
eigenvalues = 1.0, 2.5

[kernel]
form = tabulated
delta = 1.0
table = 0.0, 0.1; 10.0, 0.00000453; 30.0, 0.0000000000000001

[schedule]
mode = anti_damping
profile = scaled
fraction = 0.5
cycles = 1.0, 0.5, 0.4; 2.0, 1.0, 0.2

[initial]
position = 1, 0
velocity = 0, 0
pre_history = constant

[solver]
dt = 0.001953125
horizon = 10
backend = dafermos
)";
  const auto sc = parse_scenario(text).scenario;
  CHECK(sc.op.eigenvalues[1] == 2.5);
  CHECK(sc.kernel.mu0() == doctest::Approx(0.1));
  CHECK(sc.schedule.mode() == FeedbackMode::anti_damping);
  CHECK(sc.schedule.coefficient_at(1.25) == doctest::Approx(0.2));  // 0.5 * 0.4
  CHECK(sc.schedule.listed_cycles() == 2);
  CHECK(sc.pre_history == PreHistory::constant_equal_to_initial);
}

TEST_CASE("tabulated pre-history rows") {
  std::string text = kBase;
  text.replace(text.find("velocity = 0, 0, 0"), 18,
               "velocity = 0, 0, 0\npre_history = tabulated\n"
               "history = -1.0, 0.5, 0.25, 0.125; 0.0, 1, 0.5, 0.25");
  const auto sc = parse_scenario(text).scenario;
  CHECK(sc.pre_history == PreHistory::tabulated);
  REQUIRE(sc.history_table.size() == 2);
  CHECK(sc.history_table[0].s == -1.0);
  CHECK(sc.history_table[0].position[2] == 0.125);
}

TEST_CASE("parse errors carry InvalidScenario") {
  auto expect_invalid = [](const std::string& text) {
    try {
      parse_scenario(text);
      FAIL("expected InvalidScenario for: " << text.substr(0, 40));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidScenario);
    }
  };
  expect_invalid("[operator\nkind = wave_1d");           // malformed header
  expect_invalid("[operator]\nkind wave_1d");            // missing '='
  expect_invalid("[operator]\nkind = hyperbolic_7d");    // unknown kind

  std::string bad = kBase;
  bad.replace(bad.find("mu0 = 0.2"), 9, "mu0 = fast");
  expect_invalid(bad);

  std::string missing = kBase;
  missing.replace(missing.find("tau = 0.5"), 9, "");
  // tau defaults to 0; a delayed schedule with zero tau fails validation
  CHECK_THROWS_AS(parse_scenario(missing), Error);
}

TEST_CASE("mode count mismatches are rejected") {
  std::string text = kBase;
  text.replace(text.find("position = 1, 0.5, 0.25"), 23, "position = 1, 0.5");
  try {
    parse_scenario(text);
    FAIL("expected InconsistentModeCount");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentModeCount);
  }
}

TEST_CASE("model validation runs on load") {
  std::string text = kBase;
  text.replace(text.find("mu0 = 0.2"), 9, "mu0 = 1.5");  // mass 1.5 >= 1
  try {
    parse_scenario(text);
    FAIL("expected MassNotLessThanOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MassNotLessThanOne);
  }

  std::string baddt = kBase;
  baddt.replace(baddt.find("dt = 0.001953125"), 16, "dt = 0.0021");
  CHECK_THROWS_AS(parse_scenario(baddt), Error);  // tau not a dt multiple
}

TEST_CASE("content hash matches the 64-bit FNV-1a reference vectors") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash("foobar") == "85944171f73967e8");
  CHECK(content_hash(kBase) != content_hash(std::string(kBase) + "\n# x"));
}
