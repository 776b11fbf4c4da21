#include "memdelay/dynamics.hpp"

#include <cmath>

#include "memdelay/energy.hpp"
#include "memdelay/errors.hpp"

namespace memdelay {

namespace {

// Linear interpolation of the tabulated modal pre-history at time s <= 0.
Eigen::VectorXd history_position(const Scenario& sc, double s) {
  const auto& tab = sc.history_table;
  if (s <= tab.front().s) return tab.front().position;
  if (s >= tab.back().s) return tab.back().position;
  std::size_t hi = 1;
  while (tab[hi].s < s) ++hi;
  const auto& p0 = tab[hi - 1];
  const auto& p1 = tab[hi];
  const double w = (s - p0.s) / (p1.s - p0.s);
  return (1.0 - w) * p0.position + w * p1.position;
}

// Slope of the pre-history table segment containing time s <= 0.
Eigen::VectorXd history_velocity(const Scenario& sc, double s) {
  const auto& tab = sc.history_table;
  std::size_t hi = 1;
  while (hi + 1 < tab.size() && tab[hi].s < s) ++hi;
  const auto& p0 = tab[hi - 1];
  const auto& p1 = tab[hi];
  return (p1.position - p0.position) / (p1.s - p0.s);
}

// int_0^{s_max} mu(s) eta_k(s) ds per mode, trapezoid on the state's grid.
Eigen::VectorXd history_convolution(const Eigen::MatrixXd& eta,
                                    const ValidatedKernel& kernel) {
  const Eigen::Index J = eta.cols();
  const double ds = kernel.s_max() / static_cast<double>(J - 1);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(eta.rows());
  for (Eigen::Index j = 0; j < J; ++j) {
    const double wq = (j == 0 || j == J - 1) ? 0.5 * ds : ds;
    acc += wq * kernel.eval(static_cast<double>(j) * ds) * eta.col(j);
  }
  return acc;
}

// Memory-only part of the acceleration (total force + (1-mu_tilde)*lambda*u).
Eigen::VectorXd memory_only(const Eigen::VectorXd& u, const Eigen::MatrixXd& eta,
                            const Eigen::VectorXd& w, const Scenario& sc) {
  const auto& lam = sc.op.eigenvalues;
  if (sc.backend == Backend::ode)
    return (-lam.array() * (sc.kernel.mu_tilde() * u.array() - w.array()))
        .matrix();
  return (-lam.array() * history_convolution(eta, sc.kernel).array()).matrix();
}

// Upwind-biased transport of eta in s: second-order (Beam-Warming) in the
// interior, plain upwind next to the inflow node. First-order upwind alone
// is too diffusive: it bleeds measurable energy out of the memory term at
// the default grid.
void advance_eta(Eigen::MatrixXd& eta, const Eigen::VectorXd& source_vel,
                 double dt, double s_max) {
  const Eigen::Index J = eta.cols();
  if (J < 2) return;
  const double ds = s_max / static_cast<double>(J - 1);
  const double c = dt / ds;
  const Eigen::MatrixXd old = eta;
  eta.col(1) = old.col(1) - c * (old.col(1) - old.col(0));
  if (J > 2) {
    const auto a = old.middleCols(2, J - 2);   // j
    const auto b = old.middleCols(1, J - 2);   // j - 1
    const auto d = old.middleCols(0, J - 2);   // j - 2
    eta.rightCols(J - 2) =
        a - c * (a - b) - 0.5 * c * (1.0 - c) * (a - 2.0 * b + d);
  }
  eta.rightCols(J - 1).colwise() += dt * source_vel;
  eta.col(0).setZero();
}

Eigen::VectorXd feedback_force(const Scenario& sc, double t,
                               const Eigen::VectorXd& velocity_arg) {
  if (!sc.feedback_enabled)
    return Eigen::VectorXd::Zero(velocity_arg.size());
  const double coeff = sc.schedule.coefficient_extended(t);
  if (sc.schedule.mode() == FeedbackMode::delayed_feedback)
    return (-coeff) * velocity_arg;  // -b(t) u_t(t - tau)
  return coeff * velocity_arg;       // +k(t) u_t(t), anti-damping sign
}

}  // namespace

ModalState init_state(const Scenario& sc) {
  const Eigen::Index K = sc.modes();

  ModalState st;
  st.t = 0.0;
  st.u = sc.initial_position;
  st.v = sc.initial_velocity;

  if (sc.backend == Backend::dafermos) {
    const Eigen::Index J = sc.history_nodes;
    const double ds = sc.kernel.s_max() / static_cast<double>(J - 1);
    st.eta = Eigen::MatrixXd::Zero(K, J);
    switch (sc.pre_history) {
      case PreHistory::zero:
        // u0(., t<0) = 0, so eta_0(s) = u0(0) for every s > 0
        for (Eigen::Index j = 1; j < J; ++j) st.eta.col(j) = sc.initial_position;
        break;
      case PreHistory::constant_equal_to_initial:
        break;  // u0(0) - u0(-s) = 0
      case PreHistory::tabulated:
        for (Eigen::Index j = 1; j < J; ++j)
          st.eta.col(j) = sc.initial_position -
                          history_position(sc, -static_cast<double>(j) * ds);
        break;
    }
  } else {
    st.eta = Eigen::MatrixXd::Zero(K, 0);
    st.w = Eigen::VectorXd::Zero(K);
    st.m = Eigen::VectorXd::Zero(K);
    switch (sc.pre_history) {
      case PreHistory::zero:
        // eta_0(s) = u0 off s = 0, so m_0 = mu_tilde * u0^2
        st.m = sc.kernel.mu_tilde() * sc.initial_position.cwiseAbs2();
        break;
      case PreHistory::constant_equal_to_initial:
        st.w = sc.kernel.mu_tilde() * sc.initial_position;
        break;
      case PreHistory::tabulated: {
        // w_k = int mu(s) u0_k(-s) ds and m_k = int mu(s) eta_0,k(s)^2 ds
        // on a fine quadrature grid
        const Eigen::Index Jq = 4096;
        const double dq = sc.kernel.s_max() / static_cast<double>(Jq - 1);
        for (Eigen::Index j = 0; j < Jq; ++j) {
          const double s = static_cast<double>(j) * dq;
          const double wq = (j == 0 || j == Jq - 1) ? 0.5 * dq : dq;
          const Eigen::VectorXd past = history_position(sc, -s);
          st.w += wq * sc.kernel.eval(s) * past;
          if (j > 0)
            st.m += wq * sc.kernel.eval(s) *
                    (sc.initial_position - past).cwiseAbs2();
        }
        break;
      }
    }
  }

  st.delay_steps = sc.delay_steps();
  if (st.delay_steps > 0) {
    for (Eigen::Index i = st.delay_steps; i >= 1; --i) {
      const double s = -static_cast<double>(i) * sc.dt;
      switch (sc.pre_history) {
        case PreHistory::zero:
          st.delay_buf.emplace_back(Eigen::VectorXd::Zero(K));
          break;
        case PreHistory::constant_equal_to_initial:
          st.delay_buf.emplace_back(sc.initial_velocity);
          break;
        case PreHistory::tabulated:
          st.delay_buf.emplace_back(history_velocity(sc, s));
          break;
      }
    }
    st.delay_buf.emplace_back(st.v);
  }
  return st;
}

Eigen::VectorXd memory_force(const ModalState& state, const ValidatedKernel& kernel,
                             const OperatorSpec& op, Backend backend) {
  const auto& lam = op.eigenvalues;
  if (backend == Backend::ode)
    return (-lam.array() * state.u.array() + lam.array() * state.w.array())
        .matrix();
  return (-(1.0 - kernel.mu_tilde()) * lam.array() * state.u.array() -
          lam.array() * history_convolution(state.eta, kernel).array())
      .matrix();
}

const Eigen::VectorXd& delayed_velocity(const ModalState& state) {
  if (state.delay_steps == 0) return state.v;
  if (static_cast<Eigen::Index>(state.delay_buf.size()) != state.delay_steps + 1)
    throw Error(ErrorCode::BufferUnderfilled, "delay buffer is not full");
  return state.delay_buf.front();
}

void step(ModalState& st, const Scenario& sc) {
  const double dt = sc.dt;
  const double t = st.t;
  const auto& lam = sc.op.eigenvalues;
  const Eigen::ArrayXd a = (1.0 - sc.kernel.mu_tilde()) * lam.array();
  const Eigen::ArrayXd denom = 1.0 + (dt * dt / 4.0) * a;
  const Eigen::ArrayXd numc = 1.0 - (dt * dt / 4.0) * a;
  const bool delayed = sc.schedule.mode() == FeedbackMode::delayed_feedback;

  const Eigen::VectorXd f0 =
      memory_only(st.u, st.eta, st.w, sc) +
      feedback_force(sc, t, delayed ? delayed_velocity(st) : st.v);

  // predictor: trapezoidal in the elastic term, explicit forces at t
  const Eigen::VectorXd vstar =
      ((numc * st.v.array() - dt * a * st.u.array() + dt * f0.array()) / denom)
          .matrix();
  const Eigen::VectorXd ustar = st.u + 0.5 * dt * (st.v + vstar);
  const Eigen::VectorXd vbar = 0.5 * (st.v + vstar);

  // memory advance over [t, t+dt]
  Eigen::MatrixXd eta_new = st.eta;
  Eigen::VectorXd w_new, m_new;
  if (sc.backend == Backend::dafermos) {
    advance_eta(eta_new, vbar, dt, sc.kernel.s_max());
  } else {
    const double delta = sc.kernel.delta();
    const double decay = std::exp(-delta * dt);
    const double i1 = (1.0 - decay) / delta;
    const double i2 = (dt - i1) / delta;
    const Eigen::VectorXd slope = (ustar - st.u) / dt;
    w_new = decay * st.w + sc.kernel.mu0() * (i1 * st.u + i2 * slope);
    // quadratic moment m_k = int mu eta_k^2 ds obeys m' = -delta m
    // + 2 v (mu_tilde u - w); integrate with the same exponential scheme
    const double mt = sc.kernel.mu_tilde();
    const Eigen::VectorXd g0 =
        2.0 * st.v.cwiseProduct(mt * st.u - st.w);
    const Eigen::VectorXd g1 =
        2.0 * vstar.cwiseProduct(mt * ustar - w_new);
    m_new = (decay * st.m + i1 * g0 + i2 * (g1 - g0) / dt).cwiseMax(0.0);
  }

  // corrector: average the memory/feedback forces over the step
  const Eigen::VectorXd vdel1 =
      delayed ? (st.delay_steps > 1 ? st.delay_buf[1] : st.v) : vstar;
  const Eigen::VectorXd f1 =
      memory_only(ustar, eta_new, w_new, sc) + feedback_force(sc, t + dt, vdel1);
  const Eigen::ArrayXd fbar = 0.5 * (f0.array() + f1.array());
  const Eigen::VectorXd vnew =
      ((numc * st.v.array() - dt * a * st.u.array() + dt * fbar) / denom).matrix();
  const Eigen::VectorXd unew = st.u + 0.5 * dt * (st.v + vnew);

  if (!unew.allFinite() || !vnew.allFinite())
    throw Error(ErrorCode::NonFiniteState, "state became non-finite");

  st.u = unew;
  st.v = vnew;
  st.eta = std::move(eta_new);
  if (sc.backend == Backend::ode) {
    st.w = std::move(w_new);
    st.m = std::move(m_new);
  }
  st.t = t + dt;
  if (st.delay_steps > 0) {
    st.delay_buf.push_back(st.v);
    st.delay_buf.pop_front();
  }
}

namespace {

EnergySample scenario_energy(const ModalState& st, const Scenario& sc) {
  EnergySample e = energy_sample(st, sc.kernel, sc.op, sc.schedule, sc.dt);
  if (!sc.feedback_enabled) {
    e.delay_term = 0.0;
    e.full = e.standard;
  }
  return e;
}

}  // namespace

Trajectory simulate(const Scenario& sc) {
  validate_scenario(sc);
  ModalState st = init_state(sc);
  Trajectory traj;
  EnergySample e0 = scenario_energy(st, sc);
  traj.initial_energy = e0.standard;
  traj.energies.push_back(e0);
  if (sc.snapshot_stride > 0) traj.snapshots.push_back(st);

  const auto nsteps =
      static_cast<Eigen::Index>(std::floor(sc.horizon / sc.dt + 1e-9));
  for (Eigen::Index i = 1; i <= nsteps; ++i) {
    step(st, sc);
    const EnergySample e = scenario_energy(st, sc);
    traj.energies.push_back(e);
    if (sc.snapshot_stride > 0 && i % sc.snapshot_stride == 0)
      traj.snapshots.push_back(st);
    if (traj.initial_energy > 0.0 &&
        e.standard > 1e12 * traj.initial_energy) {
      traj.diverged = true;  // divergence guard: bounded runtime on blow-up
      break;
    }
  }
  return traj;
}

Trajectory simulate_ode_oracle(const Scenario& sc) {
  if (!sc.kernel.is_exponential())
    throw Error(ErrorCode::KernelNotExponential,
                "the ODE oracle needs an exponential kernel");
  Scenario fine = sc;
  fine.backend = Backend::ode;
  fine.dt = sc.dt / 2.0;
  return simulate(fine);
}

}  // namespace memdelay
