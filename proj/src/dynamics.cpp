#include "dqed/dynamics.hpp"

#include <cmath>
#include <string>

#include "dqed/error.hpp"

namespace dqed {
namespace {

void require_identical(const SystemParams& p, const char* op) {
  if (!p.is_identical()) {
    throw Error(ErrorKind::NotIdenticalAtoms,
                std::string(op) + " needs g_a = g_b and Delta_a = Delta_b");
  }
}

void require_size(const HilbertIndex& h) {
  if (h.n_max() > kExactMaxTruncation) {
    throw Error(ErrorKind::ExactTooLarge,
                "n_max = " + std::to_string(h.n_max()) + " exceeds " +
                    std::to_string(kExactMaxTruncation) + "; use the closed-form route");
  }
}

TwoQubitState as_mixed(const Eigen::Matrix4cd& rho) { return TwoQubitState::mixed(rho); }

}  // namespace

std::string_view to_string(EvolutionRoute route) {
  switch (route) {
    case EvolutionRoute::Exact: return "exact";
    case EvolutionRoute::EffectiveNumeric: return "effective";
    case EvolutionRoute::ClosedForm: return "closed";
  }
  return "unknown";
}

double tau_from_time(const SystemParams& p, double t) {
  return 2.0 * p.g_a() * p.g_a() * t / std::abs(p.delta_a());
}

double time_from_tau(const SystemParams& p, double tau) {
  if (p.g_a() == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "tau is undefined for zero coupling");
  }
  return tau * std::abs(p.delta_a()) / (2.0 * p.g_a() * p.g_a());
}

DressedPhases dressed_propagator(const SystemParams& p, std::size_t n, double t) {
  require_identical(p, "dressed_propagator");
  const double rate = p.dispersive_rate();
  const double outer = (p.delta_a() + rate * (2.0 * static_cast<double>(n) + 1.0)) * t;
  return {std::polar(1.0, outer), std::polar(1.0, -rate * t), std::polar(1.0, rate * t),
          std::polar(1.0, -outer)};
}

Eigen::Matrix4cd dressed_propagator_matrix(const SystemParams& p, std::size_t n, double t) {
  const DressedPhases ph = dressed_propagator(p, n, t);
  const Complex even = 0.5 * (ph.psi_plus + ph.psi_minus);
  const Complex odd = 0.5 * (ph.psi_plus - ph.psi_minus);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = ph.ground;
  u(1, 1) = even;
  u(1, 2) = odd;
  u(2, 1) = odd;
  u(2, 2) = even;
  u(3, 3) = ph.excited;
  return u;
}

Evolver Evolver::exact(const SystemParams& p, const HilbertIndex& h) {
  require_size(h);
  return Evolver(hermitian_eig(build_full_hamiltonian(p, h)), h, p.omega());
}

Evolver Evolver::effective(const SystemParams& p, const HilbertIndex& h) {
  require_size(h);
  return Evolver(hermitian_eig(build_effective_hamiltonian(p, h)), h, 0.0);
}

ComplexMatrix Evolver::half_evolved(const ComplexMatrix& rho_eig, double t) const {
  const Eigen::Index dim = eig_.eigenvalues.size();
  ComplexVector phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    phases(k) = std::polar(1.0, -eig_.eigenvalues(k) * t);
  }
  return eig_.eigenvectors * (phases.asDiagonal() * rho_eig * phases.conjugate().asDiagonal());
}

ComplexMatrix Evolver::evolve_in_eigenbasis(const ComplexMatrix& rho_eig, double t) const {
  return half_evolved(rho_eig, t) * eig_.eigenvectors.adjoint();
}

ComplexMatrix Evolver::reduced_in_eigenbasis(const ComplexMatrix& rho_eig, double t) const {
  // Only the mode-diagonal entries of each atomic block survive the trace,
  // so the second basis change is done row by row.
  const ComplexMatrix left = half_evolved(rho_eig, t);
  const auto d = static_cast<Eigen::Index>(index_.mode_dim());
  ComplexMatrix reduced = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      for (Eigen::Index n = 0; n < d; ++n) {
        reduced(i, j) += (left.row(i * d + n) * eig_.eigenvectors.row(j * d + n).adjoint())(0, 0);
      }
    }
  }
  return to_rotating_frame(reduced, t);
}

ComplexMatrix Evolver::to_rotating_frame(const ComplexMatrix& reduced, double t) const {
  if (frame_omega_ == 0.0) return reduced;
  // exp(+i omega t (sz_a + sz_b)/2) on {|00>, |01>, |10>, |11>}.
  ComplexVector w(4);
  w << std::polar(1.0, -frame_omega_ * t), 1.0, 1.0, std::polar(1.0, frame_omega_ * t);
  return w.asDiagonal() * reduced * w.conjugate().asDiagonal();
}

ComplexMatrix Evolver::full_state(const ComplexMatrix& rho0, double t) const {
  const auto dim = static_cast<Eigen::Index>(index_.total_dim());
  if (rho0.rows() != dim || rho0.cols() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "initial state does not match the Hilbert index");
  }
  const ComplexMatrix rho_eig = eig_.eigenvectors.adjoint() * rho0 * eig_.eigenvectors;
  return evolve_in_eigenbasis(rho_eig, t);
}

ComplexMatrix Evolver::reduced_state(const ComplexMatrix& rho0, double t) const {
  const std::vector<ComplexMatrix> one = reduced_series(rho0, std::span<const double>(&t, 1));
  return one.front();
}

std::vector<ComplexMatrix> Evolver::reduced_series(const ComplexMatrix& rho0,
                                                   std::span<const double> times) const {
  const auto dim = static_cast<Eigen::Index>(index_.total_dim());
  if (rho0.rows() != dim || rho0.cols() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "initial state does not match the Hilbert index");
  }
  const ComplexMatrix rho_eig = eig_.eigenvectors.adjoint() * rho0 * eig_.eigenvectors;
  std::vector<ComplexMatrix> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back(reduced_in_eigenbasis(rho_eig, t));
  }
  return out;
}

ComplexMatrix evolve_exact(const ComplexMatrix& rho0, const SystemParams& p,
                           const HilbertIndex& h, double t) {
  return Evolver::exact(p, h).reduced_state(rho0, t);
}

ComplexMatrix evolve_effective(const ComplexMatrix& rho0, const SystemParams& p,
                               const HilbertIndex& h, double t) {
  return Evolver::effective(p, h).reduced_state(rho0, t);
}

TwoQubitState closed_form_fock(const QubitState& psi, const QubitState& phi, std::size_t n,
                               const SystemParams& p, double t) {
  require_identical(p, "closed_form_fock");
  const double rate = p.dispersive_rate();
  const double outer = (p.delta_a() + rate * (2.0 * static_cast<double>(n) + 1.0)) * t;
  const double c = std::cos(rate * t);
  const double s = std::sin(rate * t);
  const Complex i(0.0, 1.0);

  Eigen::Vector4cd v;
  v(0) = psi.amp0() * phi.amp0() * std::polar(1.0, outer);
  v(1) = psi.amp0() * phi.amp1() * c - i * psi.amp1() * phi.amp0() * s;
  v(2) = psi.amp1() * phi.amp0() * c - i * psi.amp0() * phi.amp1() * s;
  v(3) = psi.amp1() * phi.amp1() * std::polar(1.0, -outer);
  return TwoQubitState::pure(v);
}

Eigen::Matrix4cd closed_form_reduced(const Eigen::Matrix4cd& atoms0, const FieldKind& field,
                                     const SystemParams& p, double t) {
  require_identical(p, "closed_form_reduced");
  const Eigen::Matrix4cd u0 = dressed_propagator_matrix(p, 0, t);
  Eigen::Matrix4cd rho = u0 * atoms0 * u0.adjoint();

  // Signed photon-number phase per unit excitation of |00> (+1) and |11> (-1).
  const double x = 2.0 * p.dispersive_rate() * t;
  constexpr int kOrder[4] = {1, 0, 0, -1};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int m = kOrder[i] - kOrder[j];
      if (m != 0) {
        rho(i, j) *= field_characteristic(field, m * x);
      }
    }
  }
  return rho;
}

TwoQubitState closed_form_coherent(const QubitState& psi, const QubitState& phi, Complex alpha,
                                   const SystemParams& p, double t) {
  return as_mixed(closed_form_reduced(TwoQubitState::product(psi, phi).density(),
                                      CoherentField{alpha}, p, t));
}

TwoQubitState closed_form_thermal(const QubitState& psi, const QubitState& phi, double mean_n,
                                  const SystemParams& p, double t) {
  return as_mixed(closed_form_reduced(TwoQubitState::product(psi, phi).density(),
                                      ThermalField{mean_n}, p, t));
}

TwoQubitState closed_form_werner_coherent(double gamma, BellState x, Complex alpha,
                                          const SystemParams& p, double t) {
  require_identical(p, "closed_form_werner_coherent");
  const TwoQubitState initial = werner_state(gamma, x);
  if (x == BellState::PsiPlus || x == BellState::PsiMinus) return initial;
  return as_mixed(closed_form_reduced(initial.density(), CoherentField{alpha}, p, t));
}

TwoQubitState closed_form_werner_thermal(double gamma, BellState x, double mean_n,
                                         const SystemParams& p, double t) {
  require_identical(p, "closed_form_werner_thermal");
  const TwoQubitState initial = werner_state(gamma, x);
  if (x == BellState::PsiPlus || x == BellState::PsiMinus) return initial;
  return as_mixed(closed_form_reduced(initial.density(), ThermalField{mean_n}, p, t));
}

}  // namespace dqed
