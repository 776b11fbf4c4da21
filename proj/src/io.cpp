#include "memdelay/io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "memdelay/errors.hpp"

namespace memdelay {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidScenario, "cannot write " + path);
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidScenario, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ostringstream out;
  out << "t,E_S,E,kinetic,potential,memory_term,delay_term\n";
  for (const auto& e : traj.energies) {
    out << format_double(e.t) << ',' << format_double(e.standard) << ','
        << format_double(e.full) << ',' << format_double(e.kinetic) << ','
        << format_double(e.potential) << ',' << format_double(e.memory_term)
        << ',' << format_double(e.delay_term) << '\n';
  }
  write_text_file(path, out.str());
}

void write_snapshot_csv(const std::string& path, const Trajectory& traj) {
  std::ostringstream out;
  out << "t,mode,u,v\n";
  for (const auto& st : traj.snapshots)
    for (Eigen::Index k = 0; k < st.u.size(); ++k)
      out << format_double(st.t) << ',' << (k + 1) << ','
          << format_double(st.u[k]) << ',' << format_double(st.v[k]) << '\n';
  write_text_file(path, out.str());
}

nlohmann::json constants_to_json(const DecayConstants& dc) {
  return {{"C", dc.C},
          {"alpha", dc.alpha},
          {"T0", dc.T0},
          {"fit_r2", dc.fit_r2},
          {"source", dc.source == ConstantsSource::calibrated ? "calibrated"
                                                              : "user_supplied"}};
}

DecayConstants constants_from_json(const nlohmann::json& j) {
  DecayConstants dc;
  dc.C = j.at("C").get<double>();
  dc.alpha = j.at("alpha").get<double>();
  dc.T0 = j.contains("T0") ? j.at("T0").get<double>() : std::log(dc.C) / dc.alpha;
  dc.fit_r2 = j.value("fit_r2", 0.0);
  dc.source = j.value("source", "user_supplied") == std::string("calibrated")
                  ? ConstantsSource::calibrated
                  : ConstantsSource::user_supplied;
  return dc;
}

namespace {

const char* variant_name(FactorVariant v) {
  switch (v) {
    case FactorVariant::general: return "general";
    case FactorVariant::short_delay: return "short_delay";
    case FactorVariant::anti_damp: return "anti_damp";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::not_certified: return "not_certified";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace

nlohmann::json report_to_json(const CertificateReport& report) {
  nlohmann::json cycles = nlohmann::json::array();
  for (const auto& c : report.cycles) {
    nlohmann::json jc = {{"index", c.index},
                         {"T_even", c.T_even},
                         {"T_odd", c.T_odd},
                         {"bound", c.bound},
                         {"variant", variant_name(c.variant)},
                         {"partial_log_sum", c.partial_log_sum},
                         {"envelope", c.envelope},
                         {"interval_too_short", c.interval_too_short}};
    if (c.contraction) jc["c_n"] = *c.contraction;
    if (c.factor) jc["factor"] = *c.factor;
    cycles.push_back(std::move(jc));
  }
  nlohmann::json j = {{"constants", constants_to_json(report.constants)},
                      {"cycles", std::move(cycles)},
                      {"asymptotic_verdict", verdict_name(report.asymptotic_verdict)},
                      {"verdict_note", report.verdict_note}};
  if (report.exponential) {
    j["exponential"] = {{"d", report.exponential->d},
                        {"beta", report.exponential->beta},
                        {"gamma", report.exponential->gamma}};
  } else {
    j["exponential"] = nullptr;
  }
  nlohmann::json env = nlohmann::json::array();
  for (const auto& p : report.envelope) env.push_back({{"t", p.t}, {"bound", p.bound}});
  j["envelope"] = std::move(env);
  return j;
}

}  // namespace memdelay
