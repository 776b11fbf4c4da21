#include "memdelay/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "memdelay/errors.hpp"

namespace memdelay {

DecayConstants DecayConstants::user(double C, double alpha) {
  if (C <= 1.0 || alpha <= 0.0)
    throw Error(ErrorCode::NotDecaying, "user constants need C > 1, alpha > 0");
  DecayConstants dc;
  dc.C = C;
  dc.alpha = alpha;
  dc.T0 = std::log(C) / alpha;
  dc.fit_r2 = 1.0;
  dc.source = ConstantsSource::user_supplied;
  return dc;
}

DecayConstants calibrate_decay(const Trajectory& traj, double burn_in) {
  if (traj.energies.empty() || traj.energies.front().standard <= 0.0)
    throw Error(ErrorCode::ZeroInitialEnergy, "E_S(0) must be positive");
  const double E0 = traj.energies.front().standard;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (const auto& e : traj.energies) {
    if (e.t < burn_in || e.standard <= 0.0) continue;
    const double y = std::log(e.standard);
    sx += e.t;
    sy += y;
    sxx += e.t * e.t;
    sxy += e.t * y;
    ++n;
  }
  if (n < 3)
    throw Error(ErrorCode::NotDecaying, "too few samples past the burn-in");
  const double det = static_cast<double>(n) * sxx - sx * sx;
  const double slope = (static_cast<double>(n) * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / static_cast<double>(n);
  if (slope >= 0.0)
    throw Error(ErrorCode::NotDecaying, "fitted log-energy slope is nonnegative");

  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / static_cast<double>(n);
  for (const auto& e : traj.energies) {
    if (e.t < burn_in || e.standard <= 0.0) continue;
    const double y = std::log(e.standard);
    const double r = y - (intercept + slope * e.t);
    ss_res += r * r;
    ss_tot += (y - mean_y) * (y - mean_y);
  }

  DecayConstants dc;
  dc.alpha = -slope;
  // inflate C until the envelope C e^{-alpha t} E_S(0) covers every sample
  double C = std::max(std::exp(intercept) / E0, 1.0 + 1e-9);
  for (const auto& e : traj.energies)
    C = std::max(C, e.standard * std::exp(dc.alpha * e.t) / E0);
  dc.C = C;
  dc.T0 = std::log(dc.C) / dc.alpha;
  dc.fit_r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
  dc.source = ConstantsSource::calibrated;
  return dc;
}

double observability_factor(const DecayConstants& constants, double T_even) {
  if (T_even <= 0.0)
    throw Error(ErrorCode::NonPositiveLength, "T_even must be positive");
  const double c = constants.C * std::exp(-constants.alpha * T_even);
  if (c >= 1.0) {
    std::ostringstream os;
    os << "T_even = " << T_even << " <= T0 = " << constants.T0
       << " gives no contraction (c = " << c << ")";
    throw Error(ErrorCode::IntervalTooShort, os.str());
  }
  return c;
}

double cycle_factor(FactorVariant variant, double contraction, double bound,
                    double T_odd, double tau) {
  if (contraction <= 0.0 || contraction >= 1.0)
    throw Error(ErrorCode::IntervalTooShort, "contraction must lie in (0,1)");
  if (bound <= 0.0)
    throw Error(ErrorCode::NonPositiveBound, "coefficient bound must be positive");
  if (T_odd <= 0.0)
    throw Error(ErrorCode::NonPositiveLength, "T_odd must be positive");
  const double bt = bound * T_odd;
  switch (variant) {
    case FactorVariant::general:
      return std::exp(2.0 * bt) * (contraction + bt);
    case FactorVariant::short_delay:
      if (T_odd > tau)
        throw Error(ErrorCode::ShortDelayInapplicable,
                    "short-delay factor needs T_odd <= tau");
      return std::exp(bt) * (contraction + 1.0 - std::exp(-bt));
    case FactorVariant::anti_damp:
      return std::exp(2.0 * bt) * contraction;
  }
  return 0.0;
}

FactorVariant select_variant(const ValidatedSchedule& schedule, const Cycle& cycle) {
  if (schedule.mode() == FeedbackMode::anti_damping)
    return FactorVariant::anti_damp;
  if (cycle.on_len <= schedule.tau()) return FactorVariant::short_delay;
  return FactorVariant::general;
}

namespace {

CycleCertificate certify_cycle(const ValidatedSchedule& sched,
                               const DecayConstants& dc, std::size_t n,
                               double& log_sum, double& envelope) {
  const Cycle c = sched.cycle(n);
  CycleCertificate cert;
  cert.index = n;
  cert.T_even = c.off_len;
  cert.T_odd = c.on_len;
  cert.bound = c.bound;
  cert.variant = select_variant(sched, c);
  if (c.off_len <= dc.T0) {
    cert.interval_too_short = true;
    cert.partial_log_sum = log_sum;
    cert.envelope = envelope;
    return cert;
  }
  const double cn = observability_factor(dc, c.off_len);
  const double f = cycle_factor(cert.variant, cn, c.bound, c.on_len, sched.tau());
  cert.contraction = cn;
  cert.factor = f;
  log_sum += std::log(f);
  envelope *= f;
  cert.partial_log_sum = log_sum;
  cert.envelope = envelope;
  return cert;
}

}  // namespace

CertificateReport check_asymptotic(const ValidatedSchedule& sched,
                                   const DecayConstants& dc,
                                   const CertifyOptions& opts) {
  CertificateReport report;
  report.constants = dc;

  const std::size_t tabulated =
      sched.unbounded() ? opts.max_cycles : sched.listed_cycles();
  double log_sum = 0.0, envelope = 1.0;
  bool any_short = false;
  for (std::size_t n = 0; n < tabulated; ++n) {
    CycleCertificate cert = certify_cycle(sched, dc, n, log_sum, envelope);
    any_short = any_short || cert.interval_too_short;
    report.cycles.push_back(std::move(cert));
  }

  if (any_short) {
    report.asymptotic_verdict = Verdict::inconclusive;
    std::ostringstream os;
    os << "off interval(s) not longer than T0 = " << dc.T0 << " at cycle(s):";
    for (const auto& cc : report.cycles)
      if (cc.interval_too_short) os << ' ' << cc.index;
    report.verdict_note = os.str();
    return report;
  }

  if (sched.schedule().geometric) {
    const double ratio = sched.schedule().geometric->ratio;
    if (ratio < 1.0) {
      // summable bounds with a uniform contraction: sum b*T < inf and
      // sum ln(c) = -inf
      report.asymptotic_verdict = Verdict::certified;
      report.verdict_note = "geometric bounds, summable b*T with constant c < 1";
    } else if (ratio == 1.0) {
      const bool contracts = *report.cycles.front().factor < 1.0;
      report.asymptotic_verdict =
          contracts ? Verdict::certified : Verdict::not_certified;
      report.verdict_note = contracts ? "constant per-cycle factor < 1"
                                      : "constant per-cycle factor >= 1";
    } else {
      report.asymptotic_verdict = Verdict::not_certified;
      report.verdict_note = "growing bounds, cycle factors diverge";
    }
  } else if (sched.schedule().periodic) {
    const double repeat_factor =
        *report.cycles[sched.listed_cycles() - 1].factor;
    if (repeat_factor < 1.0) {
      report.asymptotic_verdict = Verdict::certified;
      std::ostringstream os;
      os << "repeating cycle factor " << repeat_factor
         << " < 1, log-sum diverges to -infinity";
      report.verdict_note = os.str();
    } else {
      report.asymptotic_verdict = Verdict::not_certified;
      std::ostringstream os;
      os << "repeating cycle factor " << repeat_factor << " >= 1";
      report.verdict_note = os.str();
    }
  } else {
    const double final_env = report.cycles.empty() ? 1.0 : envelope;
    if (final_env <= opts.envelope_threshold) {
      report.asymptotic_verdict = Verdict::certified;
      std::ostringstream os;
      os << "final envelope " << final_env << " below threshold "
         << opts.envelope_threshold;
      report.verdict_note = os.str();
    } else {
      report.asymptotic_verdict = Verdict::not_certified;
      std::ostringstream os;
      os << "final envelope " << final_env << " above threshold "
         << opts.envelope_threshold;
      report.verdict_note = os.str();
    }
  }
  return report;
}

ExponentialCertificate check_exponential(const ValidatedSchedule& sched,
                                         const DecayConstants& dc) {
  const Cycle first = sched.cycle(0);
  for (std::size_t n = 1; n < sched.listed_cycles(); ++n) {
    const Cycle c = sched.cycle(n);
    if (c.off_len != first.off_len || c.on_len != first.on_len)
      throw Error(ErrorCode::NotPeriodicLengths,
                  "exponential certificate needs constant interval lengths");
  }
  if (first.off_len <= dc.T0)
    throw Error(ErrorCode::IntervalTooShort,
                "T* must exceed T0 for the exponential certificate");
  const double c = observability_factor(dc, first.off_len);

  double d = 0.0, b_max = 0.0;
  if (sched.schedule().geometric && sched.schedule().geometric->ratio > 1.0)
    throw Error(ErrorCode::NoContraction, "growing geometric bounds, sup is infinite");
  for (std::size_t n = 0; n < sched.listed_cycles(); ++n) {
    const Cycle cy = sched.cycle(n);
    const FactorVariant variant = select_variant(sched, cy);
    d = std::max(d, cycle_factor(variant, c, cy.bound, cy.on_len, sched.tau()));
    b_max = std::max(b_max, cy.bound);
  }
  // geometric bounds with ratio <= 1 peak at n = 0, already covered above
  if (d >= 1.0) {
    std::ostringstream os;
    os << "sup of cycle factors d = " << d << " >= 1";
    throw Error(ErrorCode::NoContraction, os.str());
  }
  ExponentialCertificate cert;
  cert.d = d;
  cert.beta = -std::log(d) / (first.off_len + first.on_len);
  cert.gamma = dc.C * std::exp(2.0 * b_max * first.on_len) / d;
  return cert;
}

std::vector<EnvelopePoint> decay_envelope(const ValidatedSchedule& sched,
                                          const DecayConstants& dc,
                                          std::size_t cycles) {
  std::vector<EnvelopePoint> env;
  env.push_back({0.0, 1.0});
  double running = 1.0;
  for (std::size_t n = 0; n < cycles; ++n) {
    const Cycle c = sched.cycle(n);
    const double cn = observability_factor(dc, c.off_len);
    running *= cycle_factor(select_variant(sched, c), cn, c.bound, c.on_len,
                            sched.tau());
    env.push_back({sched.cycle_start(n) + c.off_len, running});
  }
  return env;
}

}  // namespace memdelay
