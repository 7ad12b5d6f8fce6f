#pragma once

// Reduced two-atom dynamics by three routes:
//   Exact            exp(-i H t) with the full truncated Hamiltonian,
//   EffectiveNumeric exp(-i H_eff t) on the truncated space,
//   ClosedForm       dressed-state phases averaged over the photon statistics.
//
// All routes report the atomic state in the frame rotating at the mode
// frequency, i.e. with exp(-i omega N t) removed. N commutes with every
// Hamiltonian here, so this is a local phase on the atoms and leaves
// concurrence unchanged.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dqed/linalg.hpp"
#include "dqed/model.hpp"
#include "dqed/states.hpp"

namespace dqed {

enum class EvolutionRoute { Exact, EffectiveNumeric, ClosedForm };

std::string_view to_string(EvolutionRoute route);

inline constexpr std::size_t kExactMaxTruncation = 512;

// tau = 2 g_a^2 t / |Delta_a|
double tau_from_time(const SystemParams& p, double t);
// Throws InvalidArgument when g_a = 0 (no slow time scale).
double time_from_tau(const SystemParams& p, double tau);

// Phases of the identical-atom propagator on the dressed states |00,n>,
// |psi+,n>, |psi-,n>, |11,n>.
struct DressedPhases {
  Complex ground;
  Complex psi_plus;
  Complex psi_minus;
  Complex excited;
};

// Throws NotIdenticalAtoms.
DressedPhases dressed_propagator(const SystemParams& p, std::size_t n, double t);
// Same operator in the computational basis {|00>, |01>, |10>, |11>}.
Eigen::Matrix4cd dressed_propagator_matrix(const SystemParams& p, std::size_t n, double t);

// Spectral propagator for one Hamiltonian on one truncated space. The
// decomposition is computed once; const members are safe to call
// concurrently.
class Evolver {
 public:
  // Full Hamiltonian. Throws ExactTooLarge above kExactMaxTruncation.
  static Evolver exact(const SystemParams& p, const HilbertIndex& h);
  // Effective Hamiltonian; same size guard.
  static Evolver effective(const SystemParams& p, const HilbertIndex& h);

  const HilbertIndex& index() const { return index_; }

  // Full state exp(-iHt) rho0 exp(iHt) (lab frame).
  ComplexMatrix full_state(const ComplexMatrix& rho0, double t) const;
  // Reduced atomic state in the rotating frame.
  ComplexMatrix reduced_state(const ComplexMatrix& rho0, double t) const;
  std::vector<ComplexMatrix> reduced_series(const ComplexMatrix& rho0,
                                            std::span<const double> times) const;

 private:
  Evolver(EigenDecomposition eig, HilbertIndex index, double frame_omega)
      : eig_(std::move(eig)), index_(index), frame_omega_(frame_omega) {}

  // V exp(-i Lambda t) rho_eig exp(i Lambda t), i.e. the evolved state before V^dagger.
  ComplexMatrix half_evolved(const ComplexMatrix& rho_eig, double t) const;
  ComplexMatrix evolve_in_eigenbasis(const ComplexMatrix& rho_eig, double t) const;
  ComplexMatrix reduced_in_eigenbasis(const ComplexMatrix& rho_eig, double t) const;
  ComplexMatrix to_rotating_frame(const ComplexMatrix& reduced, double t) const;

  EigenDecomposition eig_;
  HilbertIndex index_;
  double frame_omega_;
};

ComplexMatrix evolve_exact(const ComplexMatrix& rho0, const SystemParams& p,
                           const HilbertIndex& h, double t);
ComplexMatrix evolve_effective(const ComplexMatrix& rho0, const SystemParams& p,
                               const HilbertIndex& h, double t);

// Pure state reached from (psi (x) phi) |n> under the identical-atom
// effective dynamics.
TwoQubitState closed_form_fock(const QubitState& psi, const QubitState& phi, std::size_t n,
                               const SystemParams& p, double t);

// Reduced state for any initial atomic state and photon statistics:
//   rho(t)_ij = (U_0 rho0 U_0^dagger)_ij * chi((k_i - k_j) * tau),
// with U_0 the n = 0 dressed propagator, k = (1, 0, 0, -1) and chi the
// field's characteristic function. Throws NotIdenticalAtoms.
Eigen::Matrix4cd closed_form_reduced(const Eigen::Matrix4cd& atoms0, const FieldKind& field,
                                     const SystemParams& p, double t);

TwoQubitState closed_form_coherent(const QubitState& psi, const QubitState& phi, Complex alpha,
                                   const SystemParams& p, double t);
TwoQubitState closed_form_thermal(const QubitState& psi, const QubitState& phi, double mean_n,
                                  const SystemParams& p, double t);
// For |psi+-> the Werner state is stationary and comes back unchanged.
TwoQubitState closed_form_werner_coherent(double gamma, BellState x, Complex alpha,
                                          const SystemParams& p, double t);
TwoQubitState closed_form_werner_thermal(double gamma, BellState x, double mean_n,
                                         const SystemParams& p, double t);

}  // namespace dqed
