#pragma once

// Two two-level atoms (a, b) coupled to one truncated bosonic mode.
//
// Atomic states are |0> (ground) and |1> (excited) with
//   sigma_z |1> = +|1>,  sigma_z |0> = -|0>,  sigma_+ = |1><0|.
// Product basis |i_a, i_b, n> is laid out with atom a slowest and the Fock
// index fastest: index = ((2 * i_a) + i_b) * (n_max + 1) + n.

#include <cstddef>

#include "dqed/linalg.hpp"

namespace dqed {

inline constexpr double kDispersiveThreshold = 0.1;

class SystemParams {
 public:
  // Throws InvalidArgument if either atom is resonant with the mode.
  SystemParams(double omega, double omega_a, double omega_b, double g_a, double g_b);

  // Identical atoms with coupling g and detuning delta around omega.
  static SystemParams identical(double omega, double delta, double g);

  double omega() const { return omega_; }
  double omega_a() const { return omega_a_; }
  double omega_b() const { return omega_b_; }
  double g_a() const { return g_a_; }
  double g_b() const { return g_b_; }
  double delta_a() const { return omega_a_ - omega_; }
  double delta_b() const { return omega_b_ - omega_; }
  double eps_a() const { return g_a_ / delta_a(); }
  double eps_b() const { return g_b_ / delta_b(); }

  // max(|eps_a|, |eps_b|) * sqrt(max(mean_n, 1)) < kDispersiveThreshold.
  bool is_dispersive(double mean_n) const;
  bool is_identical() const;

  // g_a^2 / Delta_a; sets the slow time scale of the effective dynamics.
  double dispersive_rate() const { return g_a_ * g_a_ / delta_a(); }

 private:
  double omega_;
  double omega_a_;
  double omega_b_;
  double g_a_;
  double g_b_;
};

class HilbertIndex {
 public:
  explicit HilbertIndex(std::size_t n_max);

  std::size_t n_max() const { return n_max_; }
  std::size_t mode_dim() const { return n_max_ + 1; }
  std::size_t total_dim() const { return 4 * mode_dim(); }

  std::size_t index(int i_a, int i_b, std::size_t n) const {
    return (static_cast<std::size_t>(2 * i_a + i_b)) * mode_dim() + n;
  }

 private:
  std::size_t n_max_;
};

ComplexMatrix build_full_hamiltonian(const SystemParams& p, const HilbertIndex& h);
ComplexMatrix build_interaction_hamiltonian(const SystemParams& p, const HilbertIndex& h);
ComplexMatrix build_excitation_number(const HilbertIndex& h);
ComplexMatrix build_effective_hamiltonian(const SystemParams& p, const HilbertIndex& h);

// Relative Frobenius residual of R H_int R^dagger against H_eff, with the top
// Fock level projected out on both sides. R = exp(sum_j eps_j (s+_j b - s-_j b^dagger)).
double verify_small_rotation(const SystemParams& p, const HilbertIndex& h);

}  // namespace dqed
