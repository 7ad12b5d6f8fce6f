#include "dqed/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "dqed/entanglement.hpp"
#include "dqed/error.hpp"

namespace dqed {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " axis is empty");
  }
  if (!std::is_sorted(axis.begin(), axis.end())) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " axis is not ascending");
  }
}

std::string cell_label(double intensity, double tau) {
  return "cell (intensity=" + std::to_string(intensity) + ", tau=" + std::to_string(tau) + ")";
}

std::vector<double> row_times(const ScanSpec& spec) {
  std::vector<double> times(spec.taus.size());
  std::transform(spec.taus.begin(), spec.taus.end(), times.begin(),
                 [&](double tau) { return time_from_tau(spec.params, tau); });
  return times;
}

}  // namespace

void validate(const ScanSpec& spec) {
  check_axis(spec.intensities, "intensity");
  check_axis(spec.taus, "tau");
  if (spec.route == EvolutionRoute::ClosedForm && !spec.params.is_identical()) {
    throw Error(ErrorKind::NotIdenticalAtoms, "closed-form route needs identical atoms");
  }
}

FieldKind field_for_intensity(FieldType type, double intensity) {
  if (!(intensity >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "field intensity must be non-negative");
  }
  switch (type) {
    case FieldType::Fock: {
      const double n = std::round(intensity);
      if (std::abs(n - intensity) > 1e-9) {
        throw Error(ErrorKind::InvalidArgument,
                    "Fock intensity " + std::to_string(intensity) + " is not an integer");
      }
      return FockField{static_cast<std::size_t>(n)};
    }
    case FieldType::Coherent: return CoherentField{Complex(std::sqrt(intensity), 0.0)};
    case FieldType::Thermal: return ThermalField{intensity};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown field type");
}

Eigen::Matrix4cd initial_atoms(const Scenario& scenario) {
  return std::visit(Overloaded{
                        [](const PurePureScenario& s) {
                          return TwoQubitState::product(s.psi, s.phi).density();
                        },
                        [](const WernerScenario& s) { return werner_state(s.gamma, s.x).density(); },
                    },
                    scenario);
}

std::vector<Eigen::Matrix4cd> evolve_row(const ScanSpec& spec, double intensity,
                                         EvolutionRoute route) {
  const FieldKind field = field_for_intensity(spec.field, intensity);
  const Eigen::Matrix4cd atoms0 = initial_atoms(spec.scenario);
  const std::vector<double> times = row_times(spec);
  std::vector<Eigen::Matrix4cd> out;
  out.reserve(times.size());

  if (route == EvolutionRoute::ClosedForm) {
    for (double t : times) {
      out.push_back(closed_form_reduced(atoms0, field, spec.params, t));
    }
    return out;
  }

  const HilbertIndex h(default_truncation(field));
  const Evolver evolver = route == EvolutionRoute::Exact ? Evolver::exact(spec.params, h)
                                                         : Evolver::effective(spec.params, h);
  const ComplexMatrix rho0 = kron(ComplexMatrix(atoms0), field_density(make_field(field)));
  for (const ComplexMatrix& rho : evolver.reduced_series(rho0, times)) {
    out.emplace_back(rho);
  }
  return out;
}

ScanResult run_scan(const ScanSpec& spec, unsigned threads) {
  validate(spec);
  const std::size_t rows = spec.intensities.size();
  const std::size_t cols = spec.taus.size();
  ScanResult result{spec, std::vector<double>(rows * cols, 0.0),
                    std::vector<EvolutionRoute>(rows * cols, spec.route)};
  std::vector<std::exception_ptr> errors(rows);

  const auto compute_row = [&](std::size_t r) {
    const double intensity = spec.intensities[r];
    std::size_t c = 0;
    try {
      const std::vector<Eigen::Matrix4cd> states = evolve_row(spec, intensity, spec.route);
      for (c = 0; c < cols; ++c) {
        result.values[r * cols + c] = concurrence_mixed(states[c]);
      }
    } catch (const Error& e) {
      const double tau = spec.taus[std::min(c, cols - 1)];
      errors[r] = std::make_exception_ptr(Error(e.kind(), cell_label(intensity, tau) + ": " + e.what()));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
  if (threads <= 1) {
    for (std::size_t r = 0; r < rows; ++r) compute_row(r);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < rows; r += threads) compute_row(r);
      });
    }
  }

  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

ValidationReport validation_sweep(const ScanSpec& spec, double tol) {
  ScanSpec checked = spec;
  checked.route = EvolutionRoute::ClosedForm;
  validate(checked);

  ValidationReport report;
  report.tolerance = tol;
  for (double intensity : spec.intensities) {
    const auto exact = evolve_row(spec, intensity, EvolutionRoute::Exact);
    const auto closed = evolve_row(spec, intensity, EvolutionRoute::ClosedForm);
    for (std::size_t c = 0; c < spec.taus.size(); ++c) {
      const double distance = trace_distance(exact[c], closed[c]);
      const double diff = std::abs(concurrence_mixed(exact[c]) - concurrence_mixed(closed[c]));
      ++report.cells;
      if (distance > tol || diff > kConcurrenceTolFactor * tol) ++report.failures;
      if (distance > report.max_trace_distance) {
        report.max_trace_distance = distance;
        report.worst_intensity = intensity;
        report.worst_tau = spec.taus[c];
      }
      report.max_concurrence_diff = std::max(report.max_concurrence_diff, diff);
    }
  }
  return report;
}

}  // namespace dqed
