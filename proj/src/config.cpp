#include "memdelay/config.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "memdelay/errors.hpp"

namespace memdelay {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

using Section = std::map<std::string, std::string>;
using Config = std::map<std::string, Section>;

Config parse_ini(const std::string& text) {
  Config cfg;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::InvalidScenario,
                    "malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidScenario,
                  "expected key = value at line " + std::to_string(lineno));
    cfg[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidScenario, "bad number for '" + key + "': " + v);
  }
}

std::vector<double> to_doubles(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(item, key));
  }
  return out;
}

class SectionView {
 public:
  SectionView(const Config& cfg, std::string name) : name_(std::move(name)) {
    auto it = cfg.find(name_);
    if (it != cfg.end()) sec_ = &it->second;
  }
  bool present() const { return sec_ != nullptr; }
  std::optional<std::string> get(const std::string& key) const {
    if (!sec_) return std::nullopt;
    auto it = sec_->find(key);
    if (it == sec_->end()) return std::nullopt;
    return it->second;
  }
  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v)
      throw Error(ErrorCode::InvalidScenario,
                  "missing key '" + key + "' in section [" + name_ + "]");
    return *v;
  }
  double number(const std::string& key) const { return to_double(require(key), key); }
  double number_or(const std::string& key, double fallback) const {
    auto v = get(key);
    return v ? to_double(*v, key) : fallback;
  }

 private:
  std::string name_;
  const Section* sec_ = nullptr;
};

OperatorSpec parse_operator(const SectionView& sec) {
  const std::string kind = sec.require("kind");
  if (kind == "custom") {
    const auto eig = to_doubles(sec.require("eigenvalues"), "eigenvalues");
    Eigen::VectorXd lam =
        Eigen::Map<const Eigen::VectorXd>(eig.data(), static_cast<Eigen::Index>(eig.size()));
    return custom_operator(std::move(lam));
  }
  const auto modes = static_cast<Eigen::Index>(sec.number("modes"));
  const double length = sec.number("length");
  if (kind == "wave_1d") return build_operator(OperatorKind::wave_1d, modes, length);
  if (kind == "petrovsky_1d")
    return build_operator(OperatorKind::petrovsky_1d, modes, length);
  throw Error(ErrorCode::InvalidScenario, "unknown operator kind '" + kind + "'");
}

ValidatedKernel parse_kernel(const SectionView& sec) {
  const std::string form = sec.get("form").value_or("exponential");
  if (form == "exponential") {
    return validate_kernel(MemoryKernel::exponential_kernel(
        sec.number("mu0"), sec.number("delta"), sec.number_or("s_max", 0.0)));
  }
  if (form == "tabulated") {
    std::vector<std::pair<double, double>> table;
    std::istringstream in(sec.require("table"));
    std::string item;
    while (std::getline(in, item, ';')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto vals = to_doubles(item, "table");
      if (vals.size() != 2)
        throw Error(ErrorCode::InvalidScenario, "table entries are 's, mu' pairs");
      table.emplace_back(vals[0], vals[1]);
    }
    return validate_kernel(
        MemoryKernel::tabulated_kernel(std::move(table), sec.number("delta")));
  }
  throw Error(ErrorCode::InvalidScenario, "unknown kernel form '" + form + "'");
}

ValidatedSchedule parse_schedule(const SectionView& sec) {
  Schedule s;
  const std::string mode = sec.get("mode").value_or("delayed_feedback");
  if (mode == "delayed_feedback") {
    s.mode = FeedbackMode::delayed_feedback;
  } else if (mode == "anti_damping") {
    s.mode = FeedbackMode::anti_damping;
  } else {
    throw Error(ErrorCode::InvalidScenario, "unknown schedule mode '" + mode + "'");
  }
  s.tau = sec.number_or("tau", 0.0);
  const std::string profile = sec.get("profile").value_or("constant_at_bound");
  if (profile == "constant_at_bound") {
    s.profile = CoefficientProfile::constant_at_bound;
  } else if (profile == "scaled") {
    s.profile = CoefficientProfile::scaled;
    s.profile_fraction = sec.number("fraction");
  } else {
    throw Error(ErrorCode::InvalidScenario, "unknown profile '" + profile + "'");
  }
  s.periodic = sec.get("periodic").value_or("false") == "true";
  {
    std::istringstream in(sec.require("cycles"));
    std::string item;
    while (std::getline(in, item, ';')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto vals = to_doubles(item, "cycles");
      if (vals.size() != 3)
        throw Error(ErrorCode::InvalidScenario,
                    "cycle entries are 'off_len, on_len, bound' triples");
      s.cycles.push_back({vals[0], vals[1], vals[2]});
    }
  }
  if (sec.get("geometric_b0")) {
    GeometricBounds g;
    g.b0 = sec.number("geometric_b0");
    g.ratio = sec.number("geometric_ratio");
    s.geometric = g;
  }
  return validate_schedule(std::move(s));
}

}  // namespace

LoadedScenario parse_scenario(const std::string& text) {
  const Config cfg = parse_ini(text);

  LoadedScenario loaded{
      Scenario{parse_operator(SectionView(cfg, "operator")),
               parse_kernel(SectionView(cfg, "kernel")),
               parse_schedule(SectionView(cfg, "schedule")), {}, {}},
      std::nullopt};
  Scenario& sc = loaded.scenario;
  const Eigen::Index K = sc.modes();

  const SectionView init(cfg, "initial");
  auto read_vec = [&](const std::string& key) {
    const auto vals = to_doubles(init.require(key), key);
    if (static_cast<Eigen::Index>(vals.size()) != K)
      throw Error(ErrorCode::InconsistentModeCount,
                  "'" + key + "' length differs from the mode count");
    return Eigen::Map<const Eigen::VectorXd>(vals.data(), K).eval();
  };
  sc.initial_position = read_vec("position");
  sc.initial_velocity = read_vec("velocity");
  const std::string pre = init.get("pre_history").value_or("zero");
  if (pre == "zero") {
    sc.pre_history = PreHistory::zero;
  } else if (pre == "constant") {
    sc.pre_history = PreHistory::constant_equal_to_initial;
  } else if (pre == "tabulated") {
    sc.pre_history = PreHistory::tabulated;
    std::istringstream in(init.require("history"));
    std::string item;
    while (std::getline(in, item, ';')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto vals = to_doubles(item, "history");
      if (static_cast<Eigen::Index>(vals.size()) != K + 1)
        throw Error(ErrorCode::InvalidScenario,
                    "history rows are 's, c1, ..., cK'");
      HistorySample h;
      h.s = vals[0];
      h.position = Eigen::Map<const Eigen::VectorXd>(vals.data() + 1, K);
      sc.history_table.push_back(std::move(h));
    }
  } else {
    throw Error(ErrorCode::InvalidScenario, "unknown pre_history '" + pre + "'");
  }

  const SectionView solver(cfg, "solver");
  sc.dt = solver.number_or("dt", 1.0 / 512.0);
  sc.horizon = solver.number_or("horizon", 40.0);
  sc.history_nodes = static_cast<Eigen::Index>(solver.number_or("history_nodes", 400));
  sc.snapshot_stride = static_cast<Eigen::Index>(solver.number_or("stride", 0));
  const std::string backend = solver.get("backend").value_or("dafermos");
  if (backend == "dafermos") {
    sc.backend = Backend::dafermos;
  } else if (backend == "ode") {
    sc.backend = Backend::ode;
  } else {
    throw Error(ErrorCode::InvalidScenario, "unknown backend '" + backend + "'");
  }

  validate_scenario(sc);

  const SectionView sweep(cfg, "sweep");
  if (sweep.present()) {
    SweepSpec spec;
    spec.bounds = to_doubles(sweep.require("bounds"), "bounds");
    spec.on_lengths = to_doubles(sweep.require("on_lengths"), "on_lengths");
    if (spec.bounds.empty() || spec.on_lengths.empty())
      throw Error(ErrorCode::InvalidScenario, "sweep axes must be nonempty");
    loaded.sweep = std::move(spec);
  }
  return loaded;
}

LoadedScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::InvalidScenario, "cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace memdelay
