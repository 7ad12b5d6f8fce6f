#pragma once

// Concurrence over a (field intensity x tau) grid, plus the cross-route
// validation sweep. Cells are independent; rows may be evaluated on
// separate threads and are gathered in axis order.

#include <cstddef>
#include <variant>
#include <vector>

#include "dqed/dynamics.hpp"
#include "dqed/model.hpp"
#include "dqed/states.hpp"

namespace dqed {

struct PurePureScenario {
  QubitState psi;
  QubitState phi;
};

struct WernerScenario {
  double gamma;
  BellState x;
};

using Scenario = std::variant<PurePureScenario, WernerScenario>;

enum class FieldType { Fock, Coherent, Thermal };

struct ScanSpec {
  Scenario scenario;
  FieldType field;
  std::vector<double> intensities;  // n, |alpha|^2 or mean thermal occupation
  std::vector<double> taus;
  SystemParams params;
  EvolutionRoute route = EvolutionRoute::ClosedForm;
};

// Throws InvalidArgument for empty or unsorted axes, and NotIdenticalAtoms
// for a closed-form route with distinct atoms.
void validate(const ScanSpec& spec);

// Intensity -> field. Fock intensities must be non-negative integers.
FieldKind field_for_intensity(FieldType type, double intensity);

Eigen::Matrix4cd initial_atoms(const Scenario& scenario);

struct ScanResult {
  ScanSpec spec;
  std::vector<double> values;  // row-major: rows = intensities, cols = taus
  std::vector<EvolutionRoute> provenance;

  std::size_t rows() const { return spec.intensities.size(); }
  std::size_t cols() const { return spec.taus.size(); }
  double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
};

// Reduced atomic states for one intensity row, one per tau.
std::vector<Eigen::Matrix4cd> evolve_row(const ScanSpec& spec, double intensity,
                                         EvolutionRoute route);

// threads = 0 picks the hardware concurrency. Errors carry the offending
// cell coordinates.
ScanResult run_scan(const ScanSpec& spec, unsigned threads = 1);

struct ValidationReport {
  double tolerance = 0.0;
  double max_trace_distance = 0.0;
  double max_concurrence_diff = 0.0;
  double worst_intensity = 0.0;
  double worst_tau = 0.0;
  std::size_t cells = 0;
  std::size_t failures = 0;

  bool pass() const { return failures == 0; }
};

// Concurrence differences between routes are allowed this multiple of the
// trace-distance tolerance.
inline constexpr double kConcurrenceTolFactor = 2.0;

// Compares the exact route with the closed form cell by cell; a cell fails
// when its trace distance exceeds tol or its concurrence difference exceeds
// kConcurrenceTolFactor * tol.
ValidationReport validation_sweep(const ScanSpec& spec, double tol);

}  // namespace dqed
