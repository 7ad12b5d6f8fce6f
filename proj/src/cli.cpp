#include "dqed/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "dqed/error.hpp"
#include "dqed/scan.hpp"

namespace dqed::cli {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view field_name(FieldType f) {
  switch (f) {
    case FieldType::Fock: return "fock";
    case FieldType::Coherent: return "coherent";
    case FieldType::Thermal: return "thermal";
  }
  return "unknown";
}

std::string_view bell_name(BellState b) {
  switch (b) {
    case BellState::PhiPlus: return "phi+";
    case BellState::PhiMinus: return "phi-";
    case BellState::PsiPlus: return "psi+";
    case BellState::PsiMinus: return "psi-";
  }
  return "unknown";
}

// Largest concurrence the scenario can show; used as the plot's black level.
double scenario_max(const Scenario& s) {
  return std::visit(Overloaded{
                        [](const PurePureScenario&) { return 1.0; },
                        [](const WernerScenario& w) { return std::max(0.0, (3.0 * w.gamma - 1.0) / 2.0); },
                    },
                    s);
}

void write_metadata(const RunConfig& cfg, std::string_view command, EvolutionRoute route,
                    std::ostream& out) {
  const int prec = cfg.output.precision;
  out << "# command=" << command << '\n';
  std::visit(Overloaded{
                 [&](const PurePureScenario& s) {
                   out << "# scenario=pure\n";
                   out << "# psi_a=" << format_number(s.psi.amp0().real(), prec) << ','
                       << format_number(s.psi.amp0().imag(), prec) << ','
                       << format_number(s.psi.amp1().real(), prec) << ','
                       << format_number(s.psi.amp1().imag(), prec) << '\n';
                   out << "# psi_b=" << format_number(s.phi.amp0().real(), prec) << ','
                       << format_number(s.phi.amp0().imag(), prec) << ','
                       << format_number(s.phi.amp1().real(), prec) << ','
                       << format_number(s.phi.amp1().imag(), prec) << '\n';
                 },
                 [&](const WernerScenario& w) {
                   out << "# scenario=werner\n";
                   out << "# gamma=" << format_number(w.gamma, prec) << '\n';
                   out << "# bell=" << bell_name(w.x) << '\n';
                 },
             },
             cfg.scenario);
  out << "# field=" << field_name(cfg.field) << '\n';
  out << "# g_over_delta=" << format_number(cfg.system.eps_a(), prec) << '\n';
  out << "# route=" << to_string(route) << '\n';
  out << "# vmax=" << format_number(scenario_max(cfg.scenario), prec) << '\n';
}

ScanSpec make_spec(const RunConfig& cfg, std::vector<double> intensities, std::vector<double> taus,
                   EvolutionRoute route) {
  return ScanSpec{cfg.scenario, cfg.field, std::move(intensities), std::move(taus), cfg.system,
                  route};
}

struct Check {
  std::ostream& log;
  bool all_pass = true;

  void report(bool pass, const std::string& name, const std::string& detail) {
    log << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
    all_pass = all_pass && pass;
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

void check_route_equivalence(const RunConfig& cfg, Check& check) {
  const ValidateConfig& v = cfg.validate;
  const std::vector<double> taus = linspace(0.0, v.tau_max, v.tau_steps);
  const Scenario theta_pair = PurePureScenario{theta_state(0.0), theta_state(0.0)};
  const Scenario werner = WernerScenario{9.0 / 11.0, BellState::PhiPlus};

  struct Case {
    std::string name;
    Scenario scenario;
    FieldType field;
    std::vector<double> intensities;
  };
  const std::vector<Case> cases = {
      {"theta pair, Fock", theta_pair, FieldType::Fock, v.intensities},
      {"theta pair, thermal", theta_pair, FieldType::Thermal, {v.thermal_mean_n}},
      {"Werner phi+, Fock", werner, FieldType::Fock, v.intensities},
      {"Werner phi+, thermal", werner, FieldType::Thermal, {v.thermal_mean_n}},
  };
  for (const Case& c : cases) {
    const ScanSpec spec{c.scenario, c.field, c.intensities, taus, cfg.system,
                        EvolutionRoute::Exact};
    const ValidationReport r = validation_sweep(spec, v.tolerance);
    check.report(r.pass(), "exact vs closed form (" + c.name + ")",
                 "max trace distance " + sci(r.max_trace_distance) + ", max |dC| " +
                     sci(r.max_concurrence_diff) + " over " + std::to_string(r.cells) +
                     " cells, tol " + sci(v.tolerance));
  }
}

void check_negative_control(const RunConfig& cfg, std::ostream& log) {
  const ValidateConfig& v = cfg.validate;
  const double delta = cfg.system.delta_a();
  const SystemParams control =
      SystemParams::identical(cfg.system.omega(), delta, v.control_epsilon * delta);
  const ScanSpec spec{PurePureScenario{theta_state(0.0), theta_state(0.0)}, FieldType::Fock,
                      v.intensities, linspace(0.0, v.tau_max, v.tau_steps), control,
                      EvolutionRoute::Exact};
  const ValidationReport r = validation_sweep(spec, v.tolerance);
  log << "[INFO] non-dispersive control (g/Delta = " << format_number(v.control_epsilon, 6)
      << "): max trace distance " << sci(r.max_trace_distance) << ", "
      << (r.pass() ? "unexpectedly within" : "exceeds") << " tol " << sci(v.tolerance)
      << " (" << r.failures << "/" << r.cells << " cells outside)\n";
}

void check_werner_formulas(const RunConfig& cfg, Check& check) {
  const SystemParams& p = cfg.system;
  double worst_coherent = 0.0;
  double worst_thermal = 0.0;
  for (double gamma : {0.2, 0.5, 9.0 / 11.0, 1.0}) {
    for (double intensity : {0.0, 0.5, 3.0, 20.0}) {
      for (double tau : linspace(0.0, 2.0 * M_PI, 101)) {
        const double t = time_from_tau(p, tau);
        const Complex alpha(std::sqrt(intensity), 0.0);
        worst_coherent = std::max(
            worst_coherent,
            std::abs(concurrence(closed_form_werner_coherent(gamma, BellState::PhiPlus, alpha, p, t)) -
                     concurrence_werner_coherent(gamma, alpha, p, t)));
        worst_thermal = std::max(
            worst_thermal,
            std::abs(concurrence(closed_form_werner_thermal(gamma, BellState::PhiPlus, intensity, p, t)) -
                     concurrence_werner_thermal(gamma, intensity, p, t)));
      }
    }
  }
  check.report(worst_coherent <= 1e-9, "Wootters vs coherent Werner formula",
               "max deviation " + sci(worst_coherent));
  check.report(worst_thermal <= 1e-9, "Wootters vs thermal Werner formula",
               "max deviation " + sci(worst_thermal));
}

void check_wootters_pure(Check& check) {
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = Complex(normal(rng), normal(rng));
    v.normalize();
    worst = std::max(worst, std::abs(concurrence_mixed(v * v.adjoint()) - concurrence_pure(v)));
  }
  check.report(worst <= 1e-10, "Wootters vs pure concurrence (1000 random states)",
               "max deviation " + sci(worst));
}

void check_stationarity(const RunConfig& cfg, Check& check) {
  const SystemParams& p = cfg.system;
  const double r = std::sqrt(0.5);
  std::vector<std::pair<std::string, Eigen::Vector4cd>> inputs;
  inputs.emplace_back("|00>", Eigen::Vector4cd(1, 0, 0, 0));
  inputs.emplace_back("|11>", Eigen::Vector4cd(0, 0, 0, 1));
  inputs.emplace_back("|psi+>", Eigen::Vector4cd(0, r, r, 0));
  inputs.emplace_back("|psi->", Eigen::Vector4cd(0, r, -r, 0));
  const std::vector<double> taus = linspace(0.0, cfg.validate.tau_max, cfg.validate.tau_steps);
  std::vector<double> times(taus.size());
  std::transform(taus.begin(), taus.end(), times.begin(),
                 [&](double tau) { return time_from_tau(p, tau); });

  double closed_drift = 0.0;
  double exact_drift = 0.0;
  double exact_distance = 0.0;
  for (const auto& [name, v] : inputs) {
    const Eigen::Matrix4cd atoms = v * v.adjoint();
    const double c0 = concurrence_pure(v);
    for (double intensity : cfg.validate.intensities) {
      const FieldKind kind = field_for_intensity(FieldType::Fock, intensity);
      const FieldSpec field = make_field(kind);
      const HilbertIndex h(field.n_max);
      const auto states = Evolver::exact(p, h).reduced_series(
          compose_initial(TwoQubitState::pure(v), field, h), times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        closed_drift = std::max(
            closed_drift,
            std::abs(concurrence_mixed(closed_form_reduced(atoms, kind, p, times[k])) - c0));
        exact_drift = std::max(exact_drift, std::abs(concurrence_mixed(states[k]) - c0));
        exact_distance = std::max(exact_distance, trace_distance(states[k], atoms));
      }
    }
  }
  const double tol = cfg.validate.tolerance;
  check.report(closed_drift <= 1e-10, "stationary dressed states (closed form)",
               "max concurrence drift " + sci(closed_drift));
  check.report(exact_distance <= tol && exact_drift <= kConcurrenceTolFactor * tol,
               "stationary dressed states (exact)",
               "max trace distance " + sci(exact_distance) + ", max concurrence drift " +
                   sci(exact_drift));
}

std::optional<EvolutionRoute> parse_route(const std::string& name) {
  if (name == "exact") return EvolutionRoute::Exact;
  if (name == "effective") return EvolutionRoute::EffectiveNumeric;
  if (name == "closed") return EvolutionRoute::ClosedForm;
  return std::nullopt;
}

}  // namespace

EvolutionRoute default_route(const SystemParams& p) {
  return p.is_identical() ? EvolutionRoute::ClosedForm : EvolutionRoute::EffectiveNumeric;
}

std::string format_number(double value, int precision) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

void write_evolve_csv(const RunConfig& cfg, EvolutionRoute route, std::ostream& out) {
  const std::vector<double> taus = linspace(cfg.grid.tau_min, cfg.grid.tau_max, cfg.grid.tau_steps);
  const ScanSpec spec = make_spec(cfg, {cfg.intensity}, taus, route);
  validate(spec);
  const auto states = evolve_row(spec, cfg.intensity, route);
  const int prec = cfg.output.precision;

  std::ostringstream body;
  write_metadata(cfg, "evolve", route, body);
  body << "# intensity=" << format_number(cfg.intensity, prec) << '\n';
  body << "tau,time,concurrence\n";
  for (std::size_t k = 0; k < taus.size(); ++k) {
    body << format_number(taus[k], prec) << ',' << format_number(time_from_tau(cfg.system, taus[k]), prec)
         << ',' << format_number(concurrence_mixed(states[k]), prec) << '\n';
  }
  out << body.str();
}

void write_heatmap_csv(const RunConfig& cfg, EvolutionRoute route, unsigned threads,
                       std::ostream& out) {
  const GridConfig& g = cfg.grid;
  const ScanSpec spec =
      make_spec(cfg, linspace(g.intensity_min, g.intensity_max, g.intensity_steps),
                linspace(g.tau_min, g.tau_max, g.tau_steps), route);
  const ScanResult result = run_scan(spec, threads);
  const int prec = cfg.output.precision;

  std::string body;
  {
    std::ostringstream head;
    write_metadata(cfg, "heatmap", route, head);
    head << "tau,mean_n,concurrence\n";
    body = head.str();
  }
  body.reserve(body.size() + result.values.size() * 40);
  std::vector<std::string> tau_text(result.cols());
  for (std::size_t c = 0; c < result.cols(); ++c) tau_text[c] = format_number(spec.taus[c], prec);
  for (std::size_t r = 0; r < result.rows(); ++r) {
    const std::string intensity = format_number(spec.intensities[r], prec);
    for (std::size_t c = 0; c < result.cols(); ++c) {
      body += tau_text[c];
      body += ',';
      body += intensity;
      body += ',';
      body += format_number(result.at(r, c), prec);
      body += '\n';
    }
  }
  out << body;
}

BeatReport compute_beats(const RunConfig& cfg, EvolutionRoute route) {
  const GridConfig& g = cfg.grid;
  if (!(g.tau_max > g.tau_min)) {
    throw Error(ErrorKind::Config, "beat analysis needs tau_max > tau_min");
  }
  if (route == EvolutionRoute::ClosedForm) {
    const ScanSpec spec = make_spec(cfg, {cfg.intensity}, {g.tau_min}, route);
    validate(spec);
    const FieldKind field = field_for_intensity(cfg.field, cfg.intensity);
    const Eigen::Matrix4cd atoms0 = initial_atoms(cfg.scenario);
    const auto f = [&](double tau) {
      return concurrence_mixed(closed_form_reduced(atoms0, field, cfg.system, time_from_tau(cfg.system, tau)));
    };
    return analyze_beats_adaptive(f, g.tau_min, g.tau_max, cfg.system, cfg.beats.points_per_period,
                                  cfg.beats.refine_rounds);
  }
  const auto steps = static_cast<std::size_t>(std::ceil(
                         (g.tau_max - g.tau_min) / (2.0 * M_PI) *
                         static_cast<double>(cfg.beats.points_per_period))) + 1;
  const std::vector<double> taus = linspace(g.tau_min, g.tau_max, steps);
  const ScanSpec spec = make_spec(cfg, {cfg.intensity}, taus, route);
  validate(spec);
  const auto states = evolve_row(spec, cfg.intensity, route);
  std::vector<double> values(states.size());
  std::transform(states.begin(), states.end(), values.begin(),
                 [](const Eigen::Matrix4cd& rho) { return concurrence_mixed(rho); });
  return analyze_beats(ConcurrenceSeries(taus, std::move(values)), cfg.system);
}

void write_beats_csv(const BeatReport& report, int precision, std::ostream& out) {
  std::ostringstream body;
  body << "beat_center_tau,fwhm_tau\n";
  for (std::size_t k = 0; k < report.beat_centers.size(); ++k) {
    body << format_number(report.beat_centers[k], precision) << ','
         << format_number(report.beat_fwhm[k], precision) << '\n';
  }
  body << "\nvalley_start_tau,valley_end_tau\n";
  for (const Interval& v : report.valleys) {
    body << format_number(v.start, precision) << ',' << format_number(v.end, precision) << '\n';
  }
  out << body.str();
}

void write_beats_summary(const BeatReport& report, std::ostream& out) {
  if (report.no_beats()) {
    out << "NoBeats\n";
  } else {
    out << report.beat_centers.size() << " beat(s)\n";
    for (std::size_t k = 0; k < report.beat_centers.size(); ++k) {
      out << "  center tau/pi = " << format_number(report.beat_centers[k] / M_PI, 6)
          << "  t = " << format_number(report.beat_center_times[k], 6)
          << "  FWHM tau = " << format_number(report.beat_fwhm[k], 6) << '\n';
    }
  }
  out << report.valleys.size() << " dead valley(s) below C = " << kDeadThreshold << '\n';
}

bool run_validation(const RunConfig& cfg, std::ostream& log) {
  if (!cfg.system.is_identical()) {
    throw Error(ErrorKind::NotIdenticalAtoms, "validation compares against closed forms");
  }
  Check check{log};
  log << "validation at g/Delta = " << format_number(cfg.system.eps_a(), 6) << '\n';
  check_route_equivalence(cfg, check);
  check_werner_formulas(cfg, check);
  check_wootters_pure(check);
  check_stationarity(cfg, check);
  check_negative_control(cfg, log);
  log << (check.all_pass ? "all checks passed\n" : "some checks FAILED\n");
  return check.all_pass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two dispersively coupled atoms: concurrence dynamics", "dqed"};
  app.require_subcommand(1);
  std::string config_path;
  std::string output_path;
  std::string route_name;
  unsigned threads = 1;

  std::vector<CLI::App*> commands;
  for (const char* name : {"evolve", "heatmap", "beats", "validate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "configuration file");
    sub->add_option("--output", output_path, "output path (default: stdout)");
    sub->add_option("--route", route_name, "exact | effective | closed");
    sub->add_option("--threads", threads, "worker threads for heatmaps (0 = all cores)");
    commands.push_back(sub);
  }
  commands[0]->description("concurrence time series: tau,time,concurrence");
  commands[1]->description("concurrence heatmap: tau,mean_n,concurrence");
  commands[2]->description("beat centers, widths and dead valleys");
  commands[3]->description("cross-route and formula checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig cfg;
  EvolutionRoute route{};
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!output_path.empty()) cfg.output.path = output_path;
    route = default_route(cfg.system);
    if (!route_name.empty()) {
      const auto parsed = parse_route(route_name);
      if (!parsed) throw Error(ErrorKind::Config, "unknown route '" + route_name + "'");
      route = *parsed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (!cfg.system.is_dispersive(cfg.intensity)) {
    err << "warning: parameters are outside the dispersive regime (g/Delta = "
        << format_number(cfg.system.eps_a(), 6) << ", intensity = "
        << format_number(cfg.intensity, 6) << ")\n";
  }

  try {
    std::ofstream file;
    const bool to_file = !cfg.output.path.empty();
    if (to_file) {
      file.open(cfg.output.path, std::ios::binary);
      if (!file) throw Error(ErrorKind::Config, "cannot write '" + cfg.output.path + "'");
    }
    std::ostream& sink = to_file ? static_cast<std::ostream&>(file) : out;

    if (command == "evolve") {
      write_evolve_csv(cfg, route, sink);
    } else if (command == "heatmap") {
      write_heatmap_csv(cfg, route, threads, sink);
    } else if (command == "beats") {
      const BeatReport report = compute_beats(cfg, route);
      write_beats_csv(report, cfg.output.precision, sink);
      write_beats_summary(report, to_file ? out : err);
    } else {
      const bool pass = run_validation(cfg, sink);
      return pass ? kExitOk : kExitComputation;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Config ? kExitConfig : kExitComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace dqed::cli
