#include "dqed/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dqed/error.hpp"

namespace dqed {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_tail(double tail, const char* what) {
  if (tail > kTailTol) {
    throw Error(ErrorKind::TruncationTooSmall,
                std::string(what) + " tail mass " + std::to_string(tail) + " exceeds 1e-8");
  }
}

// Truncated coherent amplitudes, not yet renormalized.
ComplexVector coherent_amplitudes(Complex alpha, std::size_t n_max) {
  ComplexVector c(static_cast<Eigen::Index>(n_max + 1));
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < c.size(); ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return c;
}

}  // namespace

QubitState::QubitState(Complex amp0, Complex amp1) : amp0_(amp0), amp1_(amp1) {
  if (std::abs(std::norm(amp0) + std::norm(amp1) - 1.0) > 1e-12) {
    throw Error(ErrorKind::NotNormalized, "qubit amplitudes are not normalized");
  }
}

QubitState theta_state(double theta) {
  const double r = std::numbers::sqrt2 / 2.0;
  return {Complex(r, 0.0), std::polar(r, theta)};
}

TwoQubitState TwoQubitState::pure(const Eigen::Vector4cd& amplitudes) {
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::NotNormalized, "two-qubit amplitudes are not normalized");
  }
  return TwoQubitState(amplitudes);
}

TwoQubitState TwoQubitState::mixed(const Eigen::Matrix4cd& rho) {
  if (!is_density(rho, 1e-10)) {
    throw Error(ErrorKind::NotDensity, "not a valid two-qubit density matrix");
  }
  return TwoQubitState(rho);
}

TwoQubitState TwoQubitState::product(const QubitState& a, const QubitState& b) {
  Eigen::Vector4cd v;
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      v(2 * ia + ib) = a.amp(ia) * b.amp(ib);
    }
  }
  return pure(v);
}

const Eigen::Vector4cd& TwoQubitState::amplitudes() const {
  if (!is_pure()) {
    throw Error(ErrorKind::InvalidArgument, "state is mixed");
  }
  return std::get<Eigen::Vector4cd>(data_);
}

Eigen::Matrix4cd TwoQubitState::density() const {
  if (is_pure()) {
    const auto& v = std::get<Eigen::Vector4cd>(data_);
    return v * v.adjoint();
  }
  return std::get<Eigen::Matrix4cd>(data_);
}

TwoQubitState bell_state(BellState which) {
  const double r = std::numbers::sqrt2 / 2.0;
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (which) {
    case BellState::PhiPlus: v << r, 0, 0, r; break;
    case BellState::PhiMinus: v << r, 0, 0, -r; break;
    case BellState::PsiPlus: v << 0, r, r, 0; break;
    case BellState::PsiMinus: v << 0, r, -r, 0; break;
  }
  return TwoQubitState::pure(v);
}

TwoQubitState werner_state(double gamma, BellState which) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorKind::GammaOutOfRange, "gamma = " + std::to_string(gamma));
  }
  const Eigen::Matrix4cd rho = 0.25 * (1.0 - gamma) * Eigen::Matrix4cd::Identity() +
                               gamma * bell_state(which).density();
  return TwoQubitState::mixed(rho);
}

double mean_photon_number(const FieldKind& kind) {
  return std::visit(Overloaded{
                        [](const FockField& f) { return static_cast<double>(f.n); },
                        [](const CoherentField& f) { return std::norm(f.alpha); },
                        [](const ThermalField& f) { return f.mean_n; },
                    },
                    kind);
}

std::size_t default_truncation(const FieldKind& kind) {
  return std::visit(
      Overloaded{
          [](const FockField& f) { return f.n + 2; },
          [](const CoherentField& f) {
            const double a = std::abs(f.alpha);
            return static_cast<std::size_t>(std::ceil(a * a + 8.0 * a + 10.0));
          },
          [](const ThermalField& f) {
            return static_cast<std::size_t>(std::ceil(20.0 * (f.mean_n + 1.0)));
          },
      },
      kind);
}

FieldSpec make_field(const FieldKind& kind) { return {kind, default_truncation(kind)}; }

RealVector photon_distribution(const FieldSpec& spec) {
  const auto dim = static_cast<Eigen::Index>(spec.n_max + 1);
  return std::visit(
      Overloaded{
          [&](const FockField& f) -> RealVector {
            if (f.n > spec.n_max) {
              throw Error(ErrorKind::TruncationTooSmall,
                          "Fock level " + std::to_string(f.n) + " above n_max");
            }
            RealVector p = RealVector::Zero(dim);
            p(static_cast<Eigen::Index>(f.n)) = 1.0;
            return p;
          },
          [&](const CoherentField& f) -> RealVector {
            const RealVector p = coherent_amplitudes(f.alpha, spec.n_max).cwiseAbs2();
            check_tail(1.0 - p.sum(), "coherent");
            return p / p.sum();
          },
          [&](const ThermalField& f) -> RealVector {
            if (f.mean_n < 0.0) {
              throw Error(ErrorKind::InvalidArgument, "negative thermal occupation");
            }
            const double ratio = f.mean_n / (1.0 + f.mean_n);
            RealVector p(dim);
            double term = 1.0 / (1.0 + f.mean_n);
            for (Eigen::Index n = 0; n < dim; ++n) {
              p(n) = term;
              term *= ratio;
            }
            check_tail(std::pow(ratio, static_cast<double>(dim)), "thermal");
            return p / p.sum();
          },
      },
      spec.kind);
}

ComplexMatrix field_density(const FieldSpec& spec) {
  if (const auto* coherent = std::get_if<CoherentField>(&spec.kind)) {
    // Pure state: keep the off-diagonal coherences.
    ComplexVector c = coherent_amplitudes(coherent->alpha, spec.n_max);
    check_tail(1.0 - c.squaredNorm(), "coherent");
    c.normalize();
    return c * c.adjoint();
  }
  return photon_distribution(spec).cast<Complex>().asDiagonal();
}

Complex field_characteristic(const FieldKind& kind, double x) {
  const Complex phase = std::polar(1.0, x);
  return std::visit(
      Overloaded{
          [&](const FockField& f) { return std::polar(1.0, static_cast<double>(f.n) * x); },
          [&](const CoherentField& f) { return std::exp(-std::norm(f.alpha) * (1.0 - phase)); },
          [&](const ThermalField& f) { return 1.0 / (1.0 + f.mean_n * (1.0 - phase)); },
      },
      kind);
}

double mean_photon_from_temperature(double omega, double kT) {
  if (!(kT > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "temperature must be positive");
  }
  return 1.0 / std::expm1(omega / kT);
}

ComplexMatrix compose_initial(const TwoQubitState& atoms, const FieldSpec& field,
                              const HilbertIndex& h) {
  if (field.n_max != h.n_max()) {
    throw Error(ErrorKind::DimensionMismatch, "field truncation differs from Hilbert index");
  }
  return kron(ComplexMatrix(atoms.density()), field_density(field));
}

}  // namespace dqed
