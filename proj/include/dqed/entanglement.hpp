#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dqed/linalg.hpp"
#include "dqed/model.hpp"
#include "dqed/states.hpp"

namespace dqed {

inline constexpr double kDeadThreshold = 1e-3;

// 2 |a00 a11 - a01 a10|. Throws NotNormalized.
double concurrence_pure(const TwoQubitState& s);
double concurrence_pure(const Eigen::Vector4cd& amplitudes);

// Wootters concurrence max{0, s1 - s2 - s3 - s4}, where s_k are the square
// roots of the eigenvalues of rho (Y rho* Y), Y = sigma_y (x) sigma_y.
// Throws NotDensity.
double concurrence_mixed(const Eigen::Matrix4cd& rho);
double concurrence(const TwoQubitState& s);

// Closed-form concurrences for identical atoms.
double concurrence_c1(const QubitState& psi, const QubitState& phi, const SystemParams& p,
                      double t);
double concurrence_c2(const QubitState& psi, const QubitState& phi, const SystemParams& p,
                      double t);
double concurrence_werner_coherent(double gamma, Complex alpha, const SystemParams& p, double t);
double concurrence_werner_thermal(double gamma, double mean_n, const SystemParams& p, double t);

class ConcurrenceSeries {
 public:
  // taus must be strictly increasing and the same length as values. Values
  // within 1e-12 of [0, 1] are clipped; anything further out throws.
  ConcurrenceSeries(std::vector<double> taus, std::vector<double> values);

  const std::vector<double>& taus() const { return taus_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return taus_.size(); }

 private:
  std::vector<double> taus_;
  std::vector<double> values_;
};

struct Interval {
  double start;
  double end;
};

struct BeatReport {
  std::vector<double> beat_centers;       // tau
  std::vector<double> beat_center_times;  // physical time
  std::vector<double> beat_fwhm;          // tau
  std::vector<Interval> valleys;          // tau intervals with C < kDeadThreshold

  bool no_beats() const { return beat_centers.empty(); }
};

// Beats are maxima above half the series maximum whose half-height
// crossings both lie inside the series; constant or monotone series give an
// empty report. Throws ResolutionTooCoarse when a beat spans fewer than five
// grid spacings at half height.
BeatReport analyze_beats(const ConcurrenceSeries& series, const SystemParams& p);

// Samples f on [tau_min, tau_max] with points_per_period samples per 2 pi,
// then bisects each half-height crossing refine_rounds times before
// interpolating.
BeatReport analyze_beats_adaptive(const std::function<double(double)>& f, double tau_min,
                                  double tau_max, const SystemParams& p,
                                  std::size_t points_per_period = 2000,
                                  int refine_rounds = 3);

}  // namespace dqed
