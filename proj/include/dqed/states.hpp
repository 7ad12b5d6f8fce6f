#pragma once

#include <complex>
#include <cstddef>
#include <variant>

#include "dqed/linalg.hpp"
#include "dqed/model.hpp"

namespace dqed {

// Truncated distributions are renormalized when the discarded tail mass is
// at most this; larger tails raise TruncationTooSmall.
inline constexpr double kTailTol = 1e-8;

class QubitState {
 public:
  // Throws NotNormalized unless |amp0|^2 + |amp1|^2 = 1 within 1e-12.
  QubitState(Complex amp0, Complex amp1);

  static QubitState ground() { return {1.0, 0.0}; }
  static QubitState excited() { return {0.0, 1.0}; }

  Complex amp0() const { return amp0_; }
  Complex amp1() const { return amp1_; }
  // <k|state>
  Complex amp(int k) const { return k == 0 ? amp0_ : amp1_; }

 private:
  Complex amp0_;
  Complex amp1_;
};

// (|0> + e^{i theta} |1>) / sqrt(2)
QubitState theta_state(double theta);

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

// Two-qubit state in the basis {|00>, |01>, |10>, |11>} (atom a first).
class TwoQubitState {
 public:
  static TwoQubitState pure(const Eigen::Vector4cd& amplitudes);
  static TwoQubitState mixed(const Eigen::Matrix4cd& rho);
  static TwoQubitState product(const QubitState& a, const QubitState& b);

  bool is_pure() const { return std::holds_alternative<Eigen::Vector4cd>(data_); }
  // Throws InvalidArgument for mixed states.
  const Eigen::Vector4cd& amplitudes() const;
  Eigen::Matrix4cd density() const;

 private:
  explicit TwoQubitState(std::variant<Eigen::Vector4cd, Eigen::Matrix4cd> data)
      : data_(std::move(data)) {}

  std::variant<Eigen::Vector4cd, Eigen::Matrix4cd> data_;
};

TwoQubitState bell_state(BellState which);

// (1 - gamma)/4 I + gamma |X><X|. Throws GammaOutOfRange outside [0, 1].
TwoQubitState werner_state(double gamma, BellState which);

struct FockField {
  std::size_t n;
};
struct CoherentField {
  Complex alpha;
};
struct ThermalField {
  double mean_n;
};
using FieldKind = std::variant<FockField, CoherentField, ThermalField>;

struct FieldSpec {
  FieldKind kind;
  std::size_t n_max;
};

double mean_photon_number(const FieldKind& kind);

// n+2 for Fock; ceil(|a|^2 + 8|a| + 10) for coherent; ceil(20 (nbar + 1)) for thermal.
std::size_t default_truncation(const FieldKind& kind);
FieldSpec make_field(const FieldKind& kind);

// Renormalized photon-number distribution p_0..p_{n_max}.
RealVector photon_distribution(const FieldSpec& spec);

// (n_max+1)-dimensional density matrix of the truncated field.
ComplexMatrix field_density(const FieldSpec& spec);

// sum_n p_n e^{i n x}, summed analytically over the untruncated distribution.
Complex field_characteristic(const FieldKind& kind, double x);

// 1 / (e^{omega/kT} - 1)
double mean_photon_from_temperature(double omega, double kT);

// rho_atoms (x) rho_field on the HilbertIndex layout.
ComplexMatrix compose_initial(const TwoQubitState& atoms, const FieldSpec& field,
                              const HilbertIndex& h);

}  // namespace dqed
