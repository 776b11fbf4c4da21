#include <doctest.h>

#include <cmath>
#include <vector>

#include "memdelay/errors.hpp"
#include "memdelay/kernel.hpp"

using namespace memdelay;

namespace {

// independent quadrature oracle: trapezoid of f on [0, b] with n panels
template <class F>
double trapezoid(F f, double b, int n) {
  const double h = b / n;
  double acc = 0.5 * (f(0.0) + f(b));
  for (int i = 1; i < n; ++i) acc += f(i * h);
  return acc * h;
}

}  // namespace

TEST_CASE("exponential kernel validates and reports its closed-form mass") {
  const auto k = validate_kernel(MemoryKernel::exponential_kernel(0.2, 1.0, 30.0));
  CHECK(k.mu_tilde() == doctest::Approx(0.2).epsilon(1e-14));

  const double quad =
      trapezoid([](double s) { return 0.2 * std::exp(-s); }, 30.0, 1 << 21);
  CHECK(std::abs(quad - 0.2) < 1e-10);
  CHECK(std::abs(quad - k.mu_tilde()) < 1e-10);
}

TEST_CASE("mass at or above one is rejected (assumption iii)") {
  try {
    validate_kernel(MemoryKernel::exponential_kernel(1.0, 0.5));
    FAIL("expected MassNotLessThanOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MassNotLessThanOne);
    CHECK(std::string(e.what()).find("assumption iii") != std::string::npos);
  }
}

TEST_CASE("kernel evaluation") {
  const auto k = validate_kernel(MemoryKernel::exponential_kernel(0.2, 1.0));
  CHECK(k.eval(0.0) == doctest::Approx(0.2));               // mu(0) = mu0
  CHECK(k.eval(1.0) == doctest::Approx(0.2 * std::exp(-1.0)));
  CHECK(k.eval(k.s_max() + 1.0) == 0.0);                    // truncation
  CHECK_THROWS_AS((void)k.eval(-0.1), Error);
}

TEST_CASE("default s_max keeps the tail negligible") {
  const auto k = validate_kernel(MemoryKernel::exponential_kernel(0.2, 2.0));
  CHECK(k.s_max() == doctest::Approx(11.5));
  CHECK(k.eval(k.s_max()) <= 1e-9 * k.mu0());
}

TEST_CASE("non-positive mu0 is rejected") {
  CHECK_THROWS_AS(validate_kernel(MemoryKernel::exponential_kernel(0.0, 1.0)), Error);
  CHECK_THROWS_AS(validate_kernel(MemoryKernel::exponential_kernel(-0.2, 1.0)), Error);
}

TEST_CASE("tail tolerance is enforced") {
  try {
    validate_kernel(MemoryKernel::exponential_kernel(0.2, 1.0, 5.0));
    FAIL("expected TailTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TailTooLarge);
  }
}

TEST_CASE("tabulated kernel: validation and interpolation") {
  std::vector<std::pair<double, double>> table;
  for (int i = 0; i <= 400; ++i) {
    const double s = i * 0.075;  // [0, 30]
    table.emplace_back(s, 0.2 * std::exp(-s));
  }
  const auto k = validate_kernel(MemoryKernel::tabulated_kernel(table, 1.0));
  CHECK(k.mu_tilde() == doctest::Approx(0.2).epsilon(1e-3));
  CHECK(k.eval(0.0) == doctest::Approx(0.2));
  // midpoint of a segment: linear interpolation of the two samples
  const double mid = 0.5 * (table[0].second + table[1].second);
  CHECK(k.eval(0.0375) == doctest::Approx(mid));
}

TEST_CASE("tabulated kernel violating the decay condition is rejected") {
  std::vector<std::pair<double, double>> table = {
      {0.0, 0.2}, {1.0, 0.2}, {2.0, 0.0}};  // flat segment decays too slowly
  try {
    validate_kernel(MemoryKernel::tabulated_kernel(table, 1.0));
    FAIL("expected DecayViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DecayViolated);
  }
}

TEST_CASE("validated exponential kernel mass matches quadrature on [0, s_max]") {
  for (double mu0 : {0.1, 0.2, 0.5}) {
    for (double delta : {0.6, 1.0, 2.0}) {
      const auto k = validate_kernel(MemoryKernel::exponential_kernel(mu0, delta));
      const double quad = trapezoid([&](double s) { return k.eval(s); },
                                    k.s_max(), 1 << 21);
      CHECK(std::abs(quad - mu0 / delta) < 1e-8);
    }
  }
}
