#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "memdelay/memdelay.hpp"

namespace fs = std::filesystem;
using namespace memdelay;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitNotDecaying = 4;
constexpr int kExitConstantsMissing = 5;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NonFiniteState:
      return kExitDivergence;
    case ErrorCode::NotDecaying:
    case ErrorCode::ZeroInitialEnergy:
      return kExitNotDecaying;
    case ErrorCode::ConstantsMissing:
      return kExitConstantsMissing;
    default:
      return kExitValidation;
  }
}

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir = ".";
  long stride = -1;  // -1: keep scenario value
  std::string backend;
  std::string constants_path;
  bool with_sim = false;
};

LoadedScenario load_with_overrides(const CommonOpts& opts) {
  LoadedScenario loaded = load_scenario_file(opts.scenario_path);
  if (opts.stride >= 0) loaded.scenario.snapshot_stride = opts.stride;
  if (opts.backend == "dafermos") loaded.scenario.backend = Backend::dafermos;
  else if (opts.backend == "ode") loaded.scenario.backend = Backend::ode;
  else if (!opts.backend.empty())
    throw Error(ErrorCode::InvalidScenario, "unknown backend " + opts.backend);
  validate_scenario(loaded.scenario);
  return loaded;
}

nlohmann::json summary_json(const CommonOpts& opts, const Trajectory& traj,
                            double wall_seconds) {
  const auto& last = traj.energies.back();
  return {{"schema_version", kSchemaVersion},
          {"scenario_hash", content_hash(read_text_file(opts.scenario_path))},
          {"initial_E_S", traj.initial_energy},
          {"terminal_E_S", last.standard},
          {"terminal_E", last.full},
          {"terminal_t", last.t},
          {"steps", traj.energies.size() - 1},
          {"diverged", traj.diverged},
          {"wall_time_s", wall_seconds}};
}

int cmd_simulate(const CommonOpts& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  LoadedScenario loaded = load_with_overrides(opts);
  const Trajectory traj = simulate(loaded.scenario);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(opts.out_dir);
  write_trajectory_csv((fs::path(opts.out_dir) / "trajectory.csv").string(), traj);
  if (!traj.snapshots.empty())
    write_snapshot_csv((fs::path(opts.out_dir) / "snapshots.csv").string(), traj);
  write_text_file((fs::path(opts.out_dir) / "summary.json").string(),
                  summary_json(opts, traj, wall).dump(2) + "\n");
  if (traj.diverged) {
    std::cerr << "divergence guard tripped at t = " << traj.energies.back().t
              << "\n";
    return kExitDivergence;
  }
  return kExitOk;
}

int cmd_calibrate(const CommonOpts& opts, double burn_in) {
  LoadedScenario loaded = load_with_overrides(opts);
  Scenario sc = loaded.scenario;
  sc.feedback_enabled = false;  // b == 0 regardless of the scenario schedule
  const Trajectory traj = simulate(sc);
  if (burn_in < 0.0) burn_in = std::min(5.0, 0.25 * sc.horizon);
  const DecayConstants dc = calibrate_decay(traj, burn_in);

  fs::create_directories(opts.out_dir);
  write_text_file((fs::path(opts.out_dir) / "constants.json").string(),
                  constants_to_json(dc).dump(2) + "\n");
  return kExitOk;
}

DecayConstants require_constants(const CommonOpts& opts) {
  if (opts.constants_path.empty())
    throw Error(ErrorCode::ConstantsMissing,
                "pass --constants PATH (a constants.json from 'calibrate')");
  return constants_from_json(
      nlohmann::json::parse(read_text_file(opts.constants_path)));
}

CertificateReport build_report(const ValidatedSchedule& sched,
                               const DecayConstants& dc,
                               std::size_t envelope_cycles) {
  CertificateReport report = check_asymptotic(sched, dc);
  try {
    report.exponential = check_exponential(sched, dc);
  } catch (const Error&) {
    report.exponential.reset();  // not applicable or no contraction
  }
  if (report.asymptotic_verdict != Verdict::inconclusive) {
    const std::size_t n =
        sched.unbounded() ? envelope_cycles
                          : std::min(envelope_cycles, sched.listed_cycles());
    report.envelope = decay_envelope(sched, dc, n);
  }
  return report;
}

int cmd_certify(const CommonOpts& opts) {
  LoadedScenario loaded = load_with_overrides(opts);
  const Scenario& sc = loaded.scenario;
  const DecayConstants dc = require_constants(opts);

  const double period = sc.schedule.cycle(0).off_len + sc.schedule.cycle(0).on_len;
  const auto cycles_in_horizon =
      static_cast<std::size_t>(std::max(1.0, std::floor(sc.horizon / period)));
  CertificateReport report = build_report(sc.schedule, dc, cycles_in_horizon);
  nlohmann::json j = report_to_json(report);

  if (opts.with_sim) {
    const Trajectory traj = simulate(sc);
    nlohmann::json measured = nlohmann::json::array();
    // compare at cycle boundaries t_{2n+2} against the certified envelope
    std::size_t n = 0;
    double env = 1.0;
    for (const auto& cc : report.cycles) {
      if (!cc.factor) break;
      double t_end;
      try {
        t_end = sc.schedule.cycle_start(n) + cc.T_even + cc.T_odd;
      } catch (const Error&) {
        break;
      }
      if (t_end > traj.energies.back().t + 1e-9) break;
      env *= *cc.factor;
      const auto idx = static_cast<std::size_t>(std::llround(t_end / sc.dt));
      const double ratio =
          traj.energies[std::min(idx, traj.energies.size() - 1)].standard /
          traj.initial_energy;
      measured.push_back({{"cycle", n},
                          {"t", t_end},
                          {"measured_ratio", ratio},
                          {"envelope", env}});
      ++n;
    }
    j["measured"] = std::move(measured);
    j["diverged"] = traj.diverged;
  }

  fs::create_directories(opts.out_dir);
  write_text_file((fs::path(opts.out_dir) / "report.json").string(),
                  j.dump(2) + "\n");
  return kExitOk;
}

struct SweepRow {
  double bound = 0.0;
  double on_len = 0.0;
  std::string verdict = "error";
  double terminal_ratio = std::nan("");
  bool diverged = false;
  std::string error;
};

int cmd_sweep(const CommonOpts& opts, unsigned workers) {
  LoadedScenario loaded = load_with_overrides(opts);
  if (!loaded.sweep)
    throw Error(ErrorCode::InvalidScenario,
                "scenario file has no [sweep] section");
  const Scenario& base = loaded.scenario;

  DecayConstants dc;
  if (!opts.constants_path.empty()) {
    dc = constants_from_json(
        nlohmann::json::parse(read_text_file(opts.constants_path)));
  } else {
    Scenario calib = base;
    calib.feedback_enabled = false;
    dc = calibrate_decay(simulate(calib), std::min(5.0, 0.25 * base.horizon));
  }

  std::vector<std::pair<double, double>> grid;
  for (double b : loaded.sweep->bounds)
    for (double T : loaded.sweep->on_lengths) grid.emplace_back(b, T);
  std::vector<SweepRow> rows(grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      SweepRow& row = rows[i];
      row.bound = grid[i].first;
      row.on_len = grid[i].second;
      try {
        Scenario sc = base;
        Schedule s = base.schedule.schedule();
        for (auto& c : s.cycles) {
          c.bound = row.bound;
          c.on_len = row.on_len;
        }
        sc.schedule = validate_schedule(std::move(s));
        validate_scenario(sc);
        const CertificateReport report = check_asymptotic(sc.schedule, dc);
        switch (report.asymptotic_verdict) {
          case Verdict::certified: row.verdict = "certified"; break;
          case Verdict::not_certified: row.verdict = "not_certified"; break;
          case Verdict::inconclusive: row.verdict = "inconclusive"; break;
        }
        const Trajectory traj = simulate(sc);
        row.terminal_ratio =
            traj.energies.back().standard / traj.initial_energy;
        row.diverged = traj.diverged;
      } catch (const Error& e) {
        row.verdict = "invalid";
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, workers);
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ostringstream out;
  out << "bound,on_length,verdict,terminal_ratio,diverged,error\n";
  for (const auto& r : rows) {
    out << format_double(r.bound) << ',' << format_double(r.on_len) << ','
        << r.verdict << ',' << format_double(r.terminal_ratio) << ','
        << (r.diverged ? "true" : "false") << ',' << r.error << '\n';
  }
  fs::create_directories(opts.out_dir);
  write_text_file((fs::path(opts.out_dir) / "grid.csv").string(), out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modal simulator and stability certificates for second-order "
               "evolution equations with viscoelastic memory and intermittent "
               "delayed (or anti-damping) feedback"};
  app.require_subcommand(1);

  CommonOpts opts;
  double burn_in = -1.0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());

  auto add_common = [&](CLI::App* sub, bool needs_scenario = true) {
    auto* s = sub->add_option("--scenario", opts.scenario_path, "scenario file");
    if (needs_scenario) s->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--stride", opts.stride, "state snapshot stride (steps)");
    sub->add_option("--backend", opts.backend, "dafermos | ode");
    sub->add_option("--constants", opts.constants_path, "constants.json path");
  };

  auto* sim = app.add_subcommand("simulate", "run a scenario, write trajectory.csv");
  add_common(sim);

  auto* cal = app.add_subcommand(
      "calibrate", "fit (C, alpha, T0) from a feedback-free run");
  add_common(cal);
  cal->add_option("--burn-in", burn_in, "fit window start (default horizon/4, max 5)");

  auto* cert = app.add_subcommand("certify", "evaluate the stability certificates");
  add_common(cert);
  cert->add_flag("--with-sim", opts.with_sim,
                 "also simulate and tabulate measured vs envelope");

  auto* sweep = app.add_subcommand("sweep", "grid of (bound, on_length) runs");
  add_common(sweep);
  sweep->add_option("--workers", workers, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(opts);
    if (cal->parsed()) return cmd_calibrate(opts, burn_in);
    if (cert->parsed()) return cmd_certify(opts);
    if (sweep->parsed()) return cmd_sweep(opts, workers);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
