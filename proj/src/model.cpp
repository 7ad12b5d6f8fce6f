#include "dqed/model.hpp"

#include <algorithm>
#include <cmath>

#include "dqed/error.hpp"

namespace dqed {
namespace {

struct Operators {
  ComplexMatrix sz_a, sz_b, sp_a, sm_a, sp_b, sm_b, b, bdag, number;
};

ComplexMatrix pauli_z() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

ComplexMatrix raising() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix annihilation(std::size_t mode_dim) {
  const auto d = static_cast<Eigen::Index>(mode_dim);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    m(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return m;
}

Operators make_operators(const HilbertIndex& h) {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix idm = ComplexMatrix::Identity(h.mode_dim(), h.mode_dim());
  const ComplexMatrix sz = pauli_z();
  const ComplexMatrix sp = raising();
  const ComplexMatrix sm = sp.adjoint();
  const ComplexMatrix a = annihilation(h.mode_dim());

  Operators ops;
  ops.sz_a = kron(kron(sz, id2), idm);
  ops.sz_b = kron(kron(id2, sz), idm);
  ops.sp_a = kron(kron(sp, id2), idm);
  ops.sm_a = kron(kron(sm, id2), idm);
  ops.sp_b = kron(kron(id2, sp), idm);
  ops.sm_b = kron(kron(id2, sm), idm);
  ops.b = kron(kron(id2, id2), a);
  ops.bdag = ops.b.adjoint();
  ops.number = ops.bdag * ops.b;
  return ops;
}

// g (s+ b + s- b^dagger) for each atom; hermitian by construction.
ComplexMatrix coupling(const Operators& ops, double g_a, double g_b) {
  const ComplexMatrix half = g_a * (ops.sp_a * ops.b) + g_b * (ops.sp_b * ops.b);
  return half + half.adjoint();
}

}  // namespace

SystemParams::SystemParams(double omega, double omega_a, double omega_b, double g_a,
                           double g_b)
    : omega_(omega), omega_a_(omega_a), omega_b_(omega_b), g_a_(g_a), g_b_(g_b) {
  if (delta_a() == 0.0 || delta_b() == 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "dispersive model needs nonzero detunings (omega_j != omega)");
  }
}

SystemParams SystemParams::identical(double omega, double delta, double g) {
  return SystemParams(omega, omega + delta, omega + delta, g, g);
}

bool SystemParams::is_dispersive(double mean_n) const {
  const double eps = std::max(std::abs(eps_a()), std::abs(eps_b()));
  return eps * std::sqrt(std::max(mean_n, 1.0)) < kDispersiveThreshold;
}

bool SystemParams::is_identical() const {
  return g_a_ == g_b_ && delta_a() == delta_b();
}

HilbertIndex::HilbertIndex(std::size_t n_max) : n_max_(n_max) {}

ComplexMatrix build_full_hamiltonian(const SystemParams& p, const HilbertIndex& h) {
  const Operators ops = make_operators(h);
  return 0.5 * p.omega_a() * ops.sz_a + 0.5 * p.omega_b() * ops.sz_b +
         p.omega() * ops.number + coupling(ops, p.g_a(), p.g_b());
}

ComplexMatrix build_interaction_hamiltonian(const SystemParams& p, const HilbertIndex& h) {
  const Operators ops = make_operators(h);
  return 0.5 * p.delta_a() * ops.sz_a + 0.5 * p.delta_b() * ops.sz_b +
         coupling(ops, p.g_a(), p.g_b());
}

ComplexMatrix build_excitation_number(const HilbertIndex& h) {
  const Operators ops = make_operators(h);
  return 0.5 * (ops.sz_a + ops.sz_b) + ops.number;
}

ComplexMatrix build_effective_hamiltonian(const SystemParams& p, const HilbertIndex& h) {
  const Operators ops = make_operators(h);
  const auto dim = static_cast<Eigen::Index>(h.total_dim());
  const ComplexMatrix shifted_number = ops.number + 0.5 * ComplexMatrix::Identity(dim, dim);
  const double stark_a = p.g_a() * p.g_a() / p.delta_a();
  const double stark_b = p.g_b() * p.g_b() / p.delta_b();
  const double dipole = 0.5 * p.g_a() * p.g_b() * (1.0 / p.delta_a() + 1.0 / p.delta_b());

  const ComplexMatrix exchange = ops.sp_a * ops.sm_b;
  return 0.5 * p.delta_a() * ops.sz_a + 0.5 * p.delta_b() * ops.sz_b +
         shifted_number * (stark_a * ops.sz_a + stark_b * ops.sz_b) +
         dipole * (exchange + exchange.adjoint());
}

double verify_small_rotation(const SystemParams& p, const HilbertIndex& h) {
  if (h.n_max() < 1) {
    throw Error(ErrorKind::InvalidArgument, "verify_small_rotation needs n_max >= 1");
  }
  const Operators ops = make_operators(h);
  // Anti-Hermitian generator G; R = exp(G) = exp(-i K) with K = i G Hermitian.
  const ComplexMatrix lower_a = ops.sp_a * ops.b;
  const ComplexMatrix lower_b = ops.sp_b * ops.b;
  const ComplexMatrix generator = p.eps_a() * (lower_a - lower_a.adjoint()) +
                                  p.eps_b() * (lower_b - lower_b.adjoint());
  const ComplexMatrix rotation =
      generator.norm() == 0.0 ? ComplexMatrix::Identity(generator.rows(), generator.cols())
                              : matrix_exp_i(Complex(0.0, 1.0) * generator, 1.0);

  const ComplexMatrix h_int = build_interaction_hamiltonian(p, h);
  const ComplexMatrix h_eff = build_effective_hamiltonian(p, h);
  const ComplexMatrix transformed = rotation * h_int * rotation.adjoint();

  // Keep only basis states below the top Fock level.
  const auto dim = static_cast<Eigen::Index>(h.total_dim());
  Eigen::VectorXd keep = Eigen::VectorXd::Zero(dim);
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      for (std::size_t n = 0; n < h.n_max(); ++n) {
        keep(static_cast<Eigen::Index>(h.index(ia, ib, n))) = 1.0;
      }
    }
  }
  const auto project = [&](const ComplexMatrix& m) {
    return ComplexMatrix(keep.asDiagonal() * m * keep.asDiagonal());
  };
  const double reference = project(h_eff).norm();
  if (reference == 0.0) {
    return project(transformed - h_eff).norm();
  }
  return project(transformed - h_eff).norm() / reference;
}

}  // namespace dqed
