#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "memdelay/errors.hpp"

using namespace memdelay;
using namespace memdelay::testing;

TEST_CASE("standard energy of a hand-built state") {
  Scenario sc = wave_scenario(1);
  sc.initial_position << 2.0;
  sc.initial_velocity << 3.0;
  sc.pre_history = PreHistory::constant_equal_to_initial;  // eta = 0
  const ModalState st = init_state(sc);
  // 1/2 * 9 + (1 - 0.2)/2 * 1 * 4
  CHECK(standard_energy(st, sc.kernel, sc.op) ==
        doctest::Approx(6.1).epsilon(1e-12));
}

TEST_CASE("memory term reproduces the grid quadrature of the kernel") {
  Scenario sc = wave_scenario(1);
  sc.initial_position << 0.0;
  ModalState st = init_state(sc);
  st.eta.setOnes();

  const Eigen::Index J = st.eta.cols();
  const double ds = sc.kernel.s_max() / static_cast<double>(J - 1);
  double quad = 0.0;
  for (Eigen::Index j = 0; j < J; ++j) {
    const double wq = (j == 0 || j == J - 1) ? 0.5 * ds : ds;
    quad += wq * sc.kernel.eval(static_cast<double>(j) * ds);
  }
  CHECK(standard_energy(st, sc.kernel, sc.op) ==
        doctest::Approx(0.5 * quad).epsilon(1e-12));
  // close to mu_tilde / 2 on a 400-node grid
  CHECK(standard_energy(st, sc.kernel, sc.op) ==
        doctest::Approx(0.1).epsilon(1e-3));
}

TEST_CASE("full energy adds the sliding delay window") {
  Scenario sc = wave_scenario(1, {{0.5, 1.0, 0.3}});
  sc.initial_position << 2.0;
  sc.initial_velocity << 3.0;
  sc.pre_history = PreHistory::constant_equal_to_initial;
  ModalState st = init_state(sc);

  // At t = 0 the window reads b on [0, tau]; only the endpoint node t = 0.5
  // touches the on interval, with trapezoid weight dt/2.
  CHECK(full_energy(st, sc.kernel, sc.op, sc.schedule, sc.dt) ==
        doctest::Approx(6.1 + 0.5 * (0.5 * sc.dt) * 0.3 * 9.0).epsilon(1e-12));

  // Shift the window fully inside the on interval [0.5, 1.5): b == 0.3
  // throughout, constant buffer, so the trapezoid is exact:
  // 1/2 * 0.3 * tau * |v|^2 = 0.5 * 0.3 * 0.5 * 9 = 0.675.
  st.t = 0.875;
  CHECK(full_energy(st, sc.kernel, sc.op, sc.schedule, sc.dt) ==
        doctest::Approx(6.1 + 0.675).epsilon(1e-12));
}

TEST_CASE("energy_sample components are consistent") {
  Scenario sc = wave_scenario(6);
  sc.initial_velocity.setLinSpaced(6, -1.0, 1.0);
  sc.horizon = 3.0;
  sc.snapshot_stride = 199;
  const Trajectory traj = simulate(sc);
  REQUIRE(!traj.snapshots.empty());
  for (const auto& st : traj.snapshots) {
    const EnergySample e = energy_sample(st, sc.kernel, sc.op, sc.schedule, sc.dt);
    CHECK(e.standard ==
          doctest::Approx(e.kinetic + e.potential + e.memory_term).epsilon(1e-14));
    CHECK(e.full == doctest::Approx(e.standard + e.delay_term).epsilon(1e-14));
    CHECK(e.standard ==
          doctest::Approx(standard_energy(st, sc.kernel, sc.op)).epsilon(1e-14));
    CHECK(e.full ==
          doctest::Approx(full_energy(st, sc.kernel, sc.op, sc.schedule, sc.dt))
              .epsilon(1e-14));
    CHECK(e.kinetic >= 0.0);
    CHECK(e.potential >= 0.0);
    CHECK(e.memory_term >= 0.0);
    CHECK(e.delay_term >= 0.0);
  }
}

TEST_CASE("delay term vanishes while the window sits in the off interval") {
  Scenario sc = wave_scenario(4);  // off 2.0 >> tau 0.5
  sc.initial_velocity << 1.0, 0.0, -1.0, 0.5;
  sc.horizon = 1.0;
  const Trajectory traj = simulate(sc);
  for (const auto& e : traj.energies) {
    if (e.t + sc.schedule.tau() < 2.0) CHECK(e.delay_term == 0.0);
  }
}

TEST_CASE("underfilled buffer is rejected") {
  Scenario sc = wave_scenario(2);
  ModalState st = init_state(sc);
  st.delay_buf.pop_back();
  CHECK_THROWS_AS((void)full_energy(st, sc.kernel, sc.op, sc.schedule, sc.dt),
                  Error);
  // the standard energy never touches the buffer
  CHECK_NOTHROW((void)standard_energy(st, sc.kernel, sc.op));
}

TEST_CASE("energy_series aliases the trajectory samples") {
  Scenario sc = wave_scenario(2);
  sc.horizon = 0.25;
  const Trajectory traj = simulate(sc);
  const auto& series = energy_series(traj);
  CHECK(&series == &traj.energies);
  CHECK(series.size() == traj.energies.size());
}

TEST_CASE("energies scale quadratically with the initial data") {
  Scenario sc = wave_scenario(3);
  sc.horizon = 2.0;
  const Trajectory base = simulate(sc);

  Scenario scaled = sc;
  scaled.initial_position *= 2.0;
  scaled.initial_velocity *= 2.0;
  const Trajectory big = simulate(scaled);
  REQUIRE(base.energies.size() == big.energies.size());
  for (std::size_t i = 0; i < base.energies.size(); i += 131) {
    CHECK(big.energies[i].full ==
          doctest::Approx(4.0 * base.energies[i].full).epsilon(1e-12));
  }
}
