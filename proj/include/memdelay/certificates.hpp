#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memdelay/schedule.hpp"
#include "memdelay/state.hpp"

namespace memdelay {

enum class ConstantsSource { calibrated, user_supplied };

/// Decay constants of the no-feedback envelope E_S(t) <= C e^{-alpha t} E_S(0)
/// and the threshold time T0 = ln(C)/alpha past which an off interval
/// contracts the energy.
struct DecayConstants {
  double C = 0.0;      // > 1
  double alpha = 0.0;  // > 0
  double T0 = 0.0;     // ln(C)/alpha
  double fit_r2 = 0.0;
  ConstantsSource source = ConstantsSource::calibrated;

  static DecayConstants user(double C, double alpha);
};

enum class FactorVariant { general, short_delay, anti_damp };
enum class Verdict { certified, not_certified, inconclusive };

struct CycleCertificate {
  std::size_t index = 0;
  double T_even = 0.0;
  double T_odd = 0.0;
  double bound = 0.0;
  std::optional<double> contraction;  // c_n, absent when T_even <= T0
  std::optional<double> factor;       // full cycle multiplier
  FactorVariant variant = FactorVariant::general;
  double partial_log_sum = 0.0;  // cumulative sum of ln(factor)
  double envelope = 1.0;         // running product of factors
  bool interval_too_short = false;
};

/// Breakpoint of the certified piecewise-constant bound on E_S(t)/E_S(0).
struct EnvelopePoint {
  double t = 0.0;
  double bound = 1.0;
};

struct ExponentialCertificate {
  double d = 0.0;      // sup of cycle factors, < 1
  double beta = 0.0;   // decay rate of the continuous envelope
  double gamma = 0.0;  // amplitude constant
};

struct CertificateReport {
  DecayConstants constants;
  std::vector<CycleCertificate> cycles;
  Verdict asymptotic_verdict = Verdict::inconclusive;
  std::string verdict_note;
  std::optional<ExponentialCertificate> exponential;
  std::vector<EnvelopePoint> envelope;
};

struct CertifyOptions {
  double envelope_threshold = 1e-6;  // finite schedules: certified below this
  std::size_t max_cycles = 64;       // cycles tabulated for unbounded schedules
};

/// Least-squares fit of ln E_S(t) over [burn_in, end] of a b == 0 run; C is
/// inflated so the envelope holds at every sample. Throws NotDecaying when
/// the fitted slope is nonnegative.
DecayConstants calibrate_decay(const Trajectory& trajectory,
                               double burn_in = 0.0);

/// c_n = C e^{-alpha T_even}; throws IntervalTooShort when T_even <= T0.
double observability_factor(const DecayConstants& constants, double T_even);

/// Certified multiplier of E_S across one off+on cycle.
double cycle_factor(FactorVariant variant, double contraction, double bound,
                    double T_odd, double tau);

/// Variant the certificate machinery uses for a given cycle of a schedule.
FactorVariant select_variant(const ValidatedSchedule& schedule, const Cycle& cycle);

/// Evaluates the divergent-log-sum stability conditions: threshold-based for
/// finite schedules, per-period factor for periodic ones, and the summable
/// bounds route for geometric parametric schedules.
CertificateReport check_asymptotic(const ValidatedSchedule& schedule,
                                   const DecayConstants& constants,
                                   const CertifyOptions& opts = {});

/// Constant-length schedules only: d = sup of cycle factors; if d < 1 yields
/// the certified envelope gamma e^{-beta t}. Throws NotPeriodicLengths or
/// NoContraction.
ExponentialCertificate check_exponential(const ValidatedSchedule& schedule,
                                         const DecayConstants& constants);

/// Piecewise-constant certified bounds on E_S(t)/E_S(0): the running product
/// on off intervals, tightened by each cycle's factor at the on-interval end.
std::vector<EnvelopePoint> decay_envelope(const ValidatedSchedule& schedule,
                                          const DecayConstants& constants,
                                          std::size_t cycles);

}  // namespace memdelay
