#pragma once

// Subcommands behind the dqed executable. Each writer takes an output
// stream so the commands can be exercised in-process.

#include <iosfwd>
#include <string>

#include "dqed/config.hpp"
#include "dqed/dynamics.hpp"
#include "dqed/entanglement.hpp"

namespace dqed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfig = 2;

// Closed form for identical atoms, numeric effective dynamics otherwise.
EvolutionRoute default_route(const SystemParams& p);

// %g-style formatting with `precision` significant digits, independent of
// the global locale.
std::string format_number(double value, int precision);

// tau,time,concurrence
void write_evolve_csv(const RunConfig& cfg, EvolutionRoute route, std::ostream& out);
// tau,mean_n,concurrence, row-major over intensity then tau.
void write_heatmap_csv(const RunConfig& cfg, EvolutionRoute route, unsigned threads,
                       std::ostream& out);

BeatReport compute_beats(const RunConfig& cfg, EvolutionRoute route);
// beat_center_tau,fwhm_tau table, a blank line, then valley_start_tau,valley_end_tau.
void write_beats_csv(const BeatReport& report, int precision, std::ostream& out);
void write_beats_summary(const BeatReport& report, std::ostream& out);

// Cross-route and formula-vs-Wootters checks. Returns true iff every
// asserted check passes; the non-dispersive control is informational.
bool run_validation(const RunConfig& cfg, std::ostream& log);

// Full command line: dqed <evolve|heatmap|beats|validate> [--config PATH]
// [--output PATH] [--route exact|effective|closed] [--threads N].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dqed::cli
