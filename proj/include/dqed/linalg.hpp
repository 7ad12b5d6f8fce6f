#pragma once

// Dense complex linear algebra shared by the model, dynamics and
// entanglement code. Matrices are Eigen::MatrixXcd; everything here is a
// pure function of its inputs.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace dqed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenTol = 1e-10;
// Density eigenvalues in [-kPositivityTol, 0) are treated as zero.
inline constexpr double kPositivityTol = 1e-10;

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // unitary, one eigenvector per column
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Throws NotHermitian if ||a - a^H||_F > tol_herm * ||a||_F and
// NoConvergence if the solver fails or the reconstruction residual exceeds
// kEigenTol relative to ||a||_F.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

// exp(-i * scale * a) for Hermitian a, via the spectral decomposition.
ComplexMatrix matrix_exp_i(const ComplexMatrix& a, double scale);
ComplexMatrix matrix_exp_i(const EigenDecomposition& eig, double scale);

// Traces the bosonic mode out of a (2 x 2 x mode_dim)-dimensional operator
// laid out with the mode index fastest.
ComplexMatrix partial_trace_mode(const ComplexMatrix& rho, std::size_t mode_dim);

double frobenius_norm(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);
// Hermitian, unit trace, and no eigenvalue below -tol.
bool is_density(const ComplexMatrix& a, double tol);

// Eigenvalues of a density matrix with the positivity clip applied.
// Throws NotPositive when an eigenvalue lies below -kPositivityTol.
EigenDecomposition density_eig(const ComplexMatrix& rho);

// A with rho = A A^H, built from the clipped spectrum.
ComplexMatrix density_factor(const ComplexMatrix& rho);

// Singular values of a square matrix in descending order, obtained from the
// Hermitian dilation [[0, b], [b^H, 0]].
RealVector singular_values(const ComplexMatrix& b);

// (1/2) || rho - sigma ||_1 for Hermitian arguments.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

// <psi| rho |psi> for a normalized psi.
double fidelity_with_pure(const ComplexVector& psi, const ComplexMatrix& rho);

double purity(const ComplexMatrix& rho);

ComplexMatrix projector(const ComplexVector& psi);

}  // namespace dqed
