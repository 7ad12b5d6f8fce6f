#include "dqed/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "dqed/dynamics.hpp"
#include "dqed/error.hpp"

namespace dqed {
namespace {

// sigma_y (x) sigma_y in the {|00>, |01>, |10>, |11>} basis.
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

struct Amplitudes {
  Complex a00, a01, a10, a11;
};

Amplitudes product_amplitudes(const QubitState& psi, const QubitState& phi) {
  return {psi.amp0() * phi.amp0(), psi.amp0() * phi.amp1(), psi.amp1() * phi.amp0(),
          psi.amp1() * phi.amp1()};
}

// L0, L1 of the |01>, |10> block after time t.
std::pair<Complex, Complex> exchange_block(const Amplitudes& a, const SystemParams& p, double t) {
  const double angle = p.dispersive_rate() * t;
  const Complex i(0.0, 1.0);
  return {a.a01 * std::cos(angle) - i * a.a10 * std::sin(angle),
          a.a10 * std::cos(angle) - i * a.a01 * std::sin(angle)};
}

void require_identical(const SystemParams& p) {
  if (!p.is_identical()) {
    throw Error(ErrorKind::NotIdenticalAtoms, "closed-form concurrence needs identical atoms");
  }
}

double werner_formula(double gamma, double visibility) {
  return std::max(0.0, ((1.0 + 2.0 * visibility) * gamma - 1.0) / 2.0);
}

class BeatFinder {
 public:
  BeatFinder(const ConcurrenceSeries& series, const std::function<double(double)>* f, int rounds)
      : tau_(series.taus()), v_(series.values()), f_(f), rounds_(rounds) {}

  BeatReport run(const SystemParams& p) const {
    BeatReport report;
    const std::size_t n = v_.size();
    if (n < 3) return report;
    find_valleys(report);

    const auto [lo, hi] = std::minmax_element(v_.begin(), v_.end());
    if (*hi - *lo <= 1e-12 || monotone()) return report;
    const double threshold = 0.5 * *hi;

    std::size_t i = 0;
    while (i < n) {
      if (v_[i] < threshold) {
        ++i;
        continue;
      }
      std::size_t end = i;
      while (end + 1 < n && v_[end + 1] >= threshold) ++end;
      add_beat(i, end, report);
      i = end + 1;
    }
    for (double c : report.beat_centers) {
      report.beat_center_times.push_back(p.g_a() == 0.0 ? 0.0 : time_from_tau(p, c));
    }
    return report;
  }

 private:
  bool monotone() const {
    bool up = true;
    bool down = true;
    for (std::size_t k = 1; k < v_.size(); ++k) {
      up = up && v_[k] >= v_[k - 1];
      down = down && v_[k] <= v_[k - 1];
    }
    return up || down;
  }

  // Crossing of `level` between samples k and k+1.
  double crossing(std::size_t k, double level) const {
    double a = tau_[k];
    double b = tau_[k + 1];
    double fa = v_[k] - level;
    double fb = v_[k + 1] - level;
    if (f_ != nullptr) {
      for (int r = 0; r < rounds_; ++r) {
        const double mid = 0.5 * (a + b);
        const double fm = (*f_)(mid) - level;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
          fb = fm;
        }
      }
    }
    if (fa == fb) return 0.5 * (a + b);
    return a + (b - a) * fa / (fa - fb);
  }

  void add_beat(std::size_t first, std::size_t last, BeatReport& report) const {
    const std::size_t peak = static_cast<std::size_t>(
        std::max_element(v_.begin() + static_cast<std::ptrdiff_t>(first),
                         v_.begin() + static_cast<std::ptrdiff_t>(last) + 1) -
        v_.begin());
    const double half = 0.5 * v_[peak];

    std::optional<std::size_t> left;
    for (std::size_t j = peak; j > 0; --j) {
      if (v_[j - 1] < half) {
        left = j - 1;
        break;
      }
    }
    std::optional<std::size_t> right;
    for (std::size_t j = peak; j + 1 < v_.size(); ++j) {
      if (v_[j + 1] < half) {
        right = j;
        break;
      }
    }
    if (!left || !right) return;  // beat cut by the series boundary

    const double lo = crossing(*left, half);
    const double hi = crossing(*right, half);
    const double fwhm = hi - lo;
    double spacing = 0.0;
    for (std::size_t k = *left; k <= *right; ++k) {
      spacing = std::max(spacing, tau_[k + 1] - tau_[k]);
    }
    if (fwhm < 5.0 * spacing) {
      const double span = tau_.back() - tau_.front();
      const auto suggested = static_cast<long long>(std::ceil(span / (fwhm / 5.0))) + 1;
      throw Error(ErrorKind::ResolutionTooCoarse,
                  "beat near tau = " + std::to_string(tau_[peak]) + " has FWHM " +
                      std::to_string(fwhm) + " below 5 grid spacings; use at least " +
                      std::to_string(suggested) + " tau steps");
    }

    double center = tau_[peak];
    if (peak > 0 && peak + 1 < v_.size()) {
      const double ym = v_[peak - 1];
      const double y0 = v_[peak];
      const double yp = v_[peak + 1];
      const double curvature = ym - 2.0 * y0 + yp;
      if (curvature < 0.0) {
        const double h = 0.5 * (tau_[peak + 1] - tau_[peak - 1]);
        center += 0.5 * h * (ym - yp) / curvature;
      }
    }
    if (!report.beat_centers.empty() && center <= report.beat_centers.back()) return;
    report.beat_centers.push_back(center);
    report.beat_fwhm.push_back(fwhm);
  }

  void find_valleys(BeatReport& report) const {
    const std::size_t n = v_.size();
    std::size_t i = 0;
    while (i < n) {
      if (v_[i] >= kDeadThreshold) {
        ++i;
        continue;
      }
      std::size_t end = i;
      while (end + 1 < n && v_[end + 1] < kDeadThreshold) ++end;
      const double start = i == 0 ? tau_.front() : crossing(i - 1, kDeadThreshold);
      const double stop = end + 1 == n ? tau_.back() : crossing(end, kDeadThreshold);
      report.valleys.push_back({start, stop});
      i = end + 1;
    }
  }

  const std::vector<double>& tau_;
  const std::vector<double>& v_;
  const std::function<double(double)>* f_;
  int rounds_;
};

}  // namespace

double concurrence_pure(const Eigen::Vector4cd& a) {
  if (std::abs(a.squaredNorm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::NotNormalized, "pure concurrence needs a normalized state");
  }
  return std::min(1.0, 2.0 * std::abs(a(0) * a(3) - a(1) * a(2)));
}

double concurrence_pure(const TwoQubitState& s) { return concurrence_pure(s.amplitudes()); }

double concurrence_mixed(const Eigen::Matrix4cd& rho) {
  if (!is_density(rho, 1e-10)) {
    throw Error(ErrorKind::NotDensity, "concurrence needs a valid density matrix");
  }
  // With rho = A A^H the nonzero eigenvalues of rho Y rho* Y are those of
  // B^H B for B = A^T Y A, so the s_k are the singular values of B.
  const ComplexMatrix factor = density_factor(rho);
  const ComplexMatrix b = factor.transpose() * spin_flip() * factor;
  const RealVector s = singular_values(b);
  const double c = s(0) - s(1) - s(2) - s(3);
  return std::clamp(c, 0.0, 1.0);
}

double concurrence(const TwoQubitState& s) {
  return s.is_pure() ? concurrence_pure(s) : concurrence_mixed(s.density());
}

double concurrence_c1(const QubitState& psi, const QubitState& phi, const SystemParams& p,
                      double t) {
  require_identical(p);
  const Amplitudes a = product_amplitudes(psi, phi);
  const auto [l0, l1] = exchange_block(a, p, t);
  return 2.0 * std::abs(l0 * l1 - a.a00 * a.a11);
}

double concurrence_c2(const QubitState& psi, const QubitState& phi, const SystemParams& p,
                      double t) {
  require_identical(p);
  const Amplitudes a = product_amplitudes(psi, phi);
  const auto [l0, l1] = exchange_block(a, p, t);
  return std::max(0.0, 2.0 * (std::abs(l0 * l1) - std::abs(a.a00 * a.a11)));
}

double concurrence_werner_coherent(double gamma, Complex alpha, const SystemParams& p,
                                   double t) {
  require_identical(p);
  const double s = std::sin(2.0 * p.dispersive_rate() * t);
  return werner_formula(gamma, std::exp(-2.0 * std::norm(alpha) * s * s));
}

double concurrence_werner_thermal(double gamma, double mean_n, const SystemParams& p,
                                  double t) {
  require_identical(p);
  const Complex phase = std::polar(1.0, -4.0 * p.dispersive_rate() * t);
  return werner_formula(gamma, 1.0 / std::abs(1.0 + mean_n * (1.0 - phase)));
}

ConcurrenceSeries::ConcurrenceSeries(std::vector<double> taus, std::vector<double> values)
    : taus_(std::move(taus)), values_(std::move(values)) {
  if (taus_.size() != values_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "tau and concurrence lengths differ");
  }
  for (std::size_t k = 1; k < taus_.size(); ++k) {
    if (!(taus_[k] > taus_[k - 1])) {
      throw Error(ErrorKind::InvalidArgument, "tau axis must be strictly increasing");
    }
  }
  for (double& v : values_) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
      throw Error(ErrorKind::InvalidArgument, "concurrence " + std::to_string(v) + " out of range");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
}

BeatReport analyze_beats(const ConcurrenceSeries& series, const SystemParams& p) {
  return BeatFinder(series, nullptr, 0).run(p);
}

BeatReport analyze_beats_adaptive(const std::function<double(double)>& f, double tau_min,
                                  double tau_max, const SystemParams& p,
                                  std::size_t points_per_period, int refine_rounds) {
  if (!(tau_max > tau_min) || points_per_period < 2) {
    throw Error(ErrorKind::InvalidArgument, "empty tau range for beat analysis");
  }
  const double period = 2.0 * M_PI;
  const auto intervals = static_cast<std::size_t>(
      std::ceil((tau_max - tau_min) / period * static_cast<double>(points_per_period)));
  std::vector<double> taus(intervals + 1);
  std::vector<double> values(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    taus[k] = tau_min + (tau_max - tau_min) * static_cast<double>(k) /
                            static_cast<double>(intervals);
    values[k] = f(taus[k]);
  }
  const ConcurrenceSeries series(std::move(taus), std::move(values));
  return BeatFinder(series, &f, refine_rounds).run(p);
}

}  // namespace dqed
