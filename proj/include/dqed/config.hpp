#pragma once

// Plain-text run configuration: bracketed sections of key = value lines,
// '#' comments. Numbers accept an optional "pi" factor and one division,
// e.g. "4pi", "pi/2", "9/11". Unknown sections or keys are rejected.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqed/model.hpp"
#include "dqed/scan.hpp"

namespace dqed {

struct GridConfig {
  double tau_min = 0.0;
  double tau_max = 4.0 * M_PI;
  std::size_t tau_steps = 800;
  double intensity_min = 0.0;
  double intensity_max = 10.0;
  std::size_t intensity_steps = 400;
};

struct OutputConfig {
  std::string path;  // empty: standard output
  int precision = 9;
};

struct ValidateConfig {
  double tolerance = 5e-3;
  double tau_max = 2.0 * M_PI;
  std::size_t tau_steps = 50;
  std::vector<double> intensities = {0.0, 1.0, 2.0};
  double thermal_mean_n = 0.5;
  double control_epsilon = 0.1;
};

struct BeatsConfig {
  std::size_t points_per_period = 2000;
  int refine_rounds = 3;
};

struct RunConfig {
  SystemParams system = SystemParams::identical(1.0, 0.1, 0.001);
  Scenario scenario = PurePureScenario{theta_state(0.0), theta_state(0.0)};
  FieldType field = FieldType::Fock;
  double intensity = 0.0;
  GridConfig grid;
  OutputConfig output;
  ValidateConfig validate;
  BeatsConfig beats;
};

// Throws Error(Config) with the offending line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// "4pi", "pi/2", "9/11", "1e-3". Throws Error(InvalidArgument).
double parse_number(std::string_view text);

std::vector<double> linspace(double lo, double hi, std::size_t steps);

}  // namespace dqed
