#include "dqed/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dqed/error.hpp"

namespace dqed {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_factor(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty number");
  double scale = 1.0;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    scale = M_PI;
    s = trim(s.substr(0, s.size() - 2));
    if (s.empty() || s == "+") return scale;
    if (s == "-") return -scale;
    if (s.back() == '*') s = trim(s.substr(0, s.size() - 1));
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(s) + "'");
  }
  return value * scale;
}

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(ErrorKind::Config, "line " + std::to_string(line) + ": " + message);
}

const std::map<std::string, std::vector<std::string>>& allowed_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"system", {"omega", "omega_a", "omega_b", "g_a", "g_b"}},
      {"scenario", {"type", "state_a", "state_b", "theta_a", "theta_b", "gamma", "bell"}},
      {"field", {"kind", "intensity", "kT"}},
      {"grid",
       {"tau_min", "tau_max", "tau_steps", "intensity_min", "intensity_max", "intensity_steps"}},
      {"output", {"path", "precision"}},
      {"validate",
       {"tolerance", "tau_max", "tau_steps", "intensities", "thermal_mean_n", "control_epsilon"}},
      {"beats", {"points_per_period", "refine_rounds"}},
  };
  return keys;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  double number(const std::string& section, const std::string& key, double fallback) const {
    const Entry* e = find(section, key);
    if (e == nullptr) return fallback;
    try {
      return parse_number(e->value);
    } catch (const Error& err) {
      fail(e->line, section + "." + key + ": " + err.what());
    }
  }

  std::size_t count(const std::string& section, const std::string& key,
                    std::size_t fallback) const {
    const Entry* e = find(section, key);
    if (e == nullptr) return fallback;
    const double v = number(section, key, 0.0);
    if (v < 0.0 || std::floor(v) != v) {
      fail(e->line, section + "." + key + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
  }

  std::string text(const std::string& section, const std::string& key,
                   const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e == nullptr ? fallback : e->value;
  }

  int line_of(const std::string& section) const {
    const auto s = sections_.find(section);
    if (s == sections_.end() || s->second.empty()) return 0;
    return s->second.begin()->second.line;
  }

 private:
  std::map<std::string, Section> sections_;
};

QubitState read_qubit(const Reader& r, const std::string& which) {
  const std::string key = "state_" + which;
  const std::string state = r.text("scenario", key, "theta");
  if (state == "0") return QubitState::ground();
  if (state == "1") return QubitState::excited();
  if (state == "theta") return theta_state(r.number("scenario", "theta_" + which, 0.0));
  fail(r.find("scenario", key)->line, "scenario." + key + " must be 0, 1 or theta");
}

BellState read_bell(const Reader& r) {
  const std::string bell = r.text("scenario", "bell", "phi+");
  if (bell == "phi+") return BellState::PhiPlus;
  if (bell == "phi-") return BellState::PhiMinus;
  if (bell == "psi+") return BellState::PsiPlus;
  if (bell == "psi-") return BellState::PsiMinus;
  fail(r.find("scenario", "bell")->line, "scenario.bell must be phi+, phi-, psi+ or psi-");
}

}  // namespace

double parse_number(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_factor(text);
  const double den = parse_factor(text.substr(slash + 1));
  if (den == 0.0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  return parse_factor(text.substr(0, slash)) / den;
}

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = steps == 1 ? lo
                        : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  return out;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      current = std::string(trim(s.substr(1, s.size() - 2)));
      if (!allowed_keys().contains(current)) fail(line, "unknown section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) fail(line, "expected key = value");
    if (current.empty()) fail(line, "key outside of any section");
    const std::string key(trim(s.substr(0, eq)));
    const std::string value(trim(s.substr(eq + 1)));
    const auto& keys = allowed_keys().at(current);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      fail(line, "unknown key '" + key + "' in [" + current + "]");
    }
    if (value.empty()) fail(line, "missing value for '" + key + "'");
    if (!sections[current].emplace(key, Entry{value, line}).second) {
      fail(line, "duplicate key '" + key + "'");
    }
  }

  const Reader r(std::move(sections));
  RunConfig cfg;

  const double omega = r.number("system", "omega", 1.0);
  try {
    cfg.system = SystemParams(omega, r.number("system", "omega_a", omega + 0.1),
                              r.number("system", "omega_b", omega + 0.1),
                              r.number("system", "g_a", 0.001), r.number("system", "g_b", 0.001));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail(r.line_of("system"), e.what());
  }

  const std::string type = r.text("scenario", "type", "pure");
  if (type == "pure") {
    cfg.scenario = PurePureScenario{read_qubit(r, "a"), read_qubit(r, "b")};
  } else if (type == "werner") {
    const double gamma = r.number("scenario", "gamma", 9.0 / 11.0);
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      fail(r.find("scenario", "gamma")->line, "scenario.gamma must lie in [0, 1]");
    }
    cfg.scenario = WernerScenario{gamma, read_bell(r)};
  } else {
    fail(r.find("scenario", "type")->line, "scenario.type must be pure or werner");
  }

  const std::string kind = r.text("field", "kind", "fock");
  if (kind == "fock") {
    cfg.field = FieldType::Fock;
  } else if (kind == "coherent") {
    cfg.field = FieldType::Coherent;
  } else if (kind == "thermal") {
    cfg.field = FieldType::Thermal;
  } else {
    fail(r.find("field", "kind")->line, "field.kind must be fock, coherent or thermal");
  }
  cfg.intensity = r.number("field", "intensity", 0.0);
  if (const Entry* kt = r.find("field", "kT")) {
    if (cfg.field != FieldType::Thermal) fail(kt->line, "field.kT applies to thermal fields only");
    if (r.find("field", "intensity") != nullptr) {
      fail(kt->line, "give either field.intensity or field.kT");
    }
    const double temperature = r.number("field", "kT", 0.0);
    if (!(temperature > 0.0)) fail(kt->line, "field.kT must be positive");
    cfg.intensity = mean_photon_from_temperature(cfg.system.omega(), temperature);
  }
  if (cfg.intensity < 0.0) fail(r.find("field", "intensity")->line, "negative field intensity");

  GridConfig& g = cfg.grid;
  g.tau_min = r.number("grid", "tau_min", g.tau_min);
  g.tau_max = r.number("grid", "tau_max", g.tau_max);
  g.tau_steps = r.count("grid", "tau_steps", g.tau_steps);
  g.intensity_min = r.number("grid", "intensity_min", g.intensity_min);
  g.intensity_max = r.number("grid", "intensity_max", g.intensity_max);
  g.intensity_steps = r.count("grid", "intensity_steps", g.intensity_steps);
  if (g.tau_steps == 0) {
    const Entry* e = r.find("grid", "tau_steps");
    fail(e != nullptr ? e->line : 0, "empty tau grid");
  }
  if (g.intensity_steps == 0) fail(r.find("grid", "intensity_steps")->line, "empty intensity grid");
  if (g.tau_max < g.tau_min) fail(r.line_of("grid"), "tau_max is below tau_min");
  if (g.intensity_max < g.intensity_min || g.intensity_min < 0.0) {
    fail(r.line_of("grid"), "intensity range must be ascending and non-negative");
  }

  cfg.output.path = r.text("output", "path", "");
  const std::size_t precision = r.count("output", "precision", 9);
  if (precision < 1 || precision > 17) {
    fail(r.find("output", "precision")->line, "output.precision must be in [1, 17]");
  }
  cfg.output.precision = static_cast<int>(precision);

  ValidateConfig& v = cfg.validate;
  v.tolerance = r.number("validate", "tolerance", v.tolerance);
  v.tau_max = r.number("validate", "tau_max", v.tau_max);
  v.tau_steps = r.count("validate", "tau_steps", v.tau_steps);
  v.thermal_mean_n = r.number("validate", "thermal_mean_n", v.thermal_mean_n);
  v.control_epsilon = r.number("validate", "control_epsilon", v.control_epsilon);
  if (const Entry* e = r.find("validate", "intensities")) {
    v.intensities.clear();
    std::string_view rest = e->value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      try {
        v.intensities.push_back(parse_number(rest.substr(0, comma)));
      } catch (const Error& err) {
        fail(e->line, std::string("validate.intensities: ") + err.what());
      }
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  if (v.tau_steps == 0) fail(r.find("validate", "tau_steps")->line, "empty validation grid");

  cfg.beats.points_per_period = r.count("beats", "points_per_period", 2000);
  cfg.beats.refine_rounds = static_cast<int>(r.count("beats", "refine_rounds", 3));
  if (cfg.beats.points_per_period < 2) {
    fail(r.find("beats", "points_per_period")->line, "beats.points_per_period must be >= 2");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace dqed
