#include "dqed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqed/error.hpp"

namespace dqed {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotDensity: return "NotDensity";
    case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::NotIdenticalAtoms: return "NotIdenticalAtoms";
    case ErrorKind::ExactTooLarge: return "ExactTooLarge";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Unknown";
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "hermitian_eig needs a square matrix");
  }
  const double scale = a.norm();
  if ((a - a.adjoint()).norm() > kHermitianTol * scale) {
    throw Error(ErrorKind::NotHermitian, "asymmetry exceeds tolerance");
  }
  // Solve on the exactly symmetrized matrix; Eigen reads only the lower triangle.
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "self-adjoint eigensolver failed");
  }
  EigenDecomposition eig{solver.eigenvalues(), solver.eigenvectors()};
  const double residual =
      (sym * eig.eigenvectors - eig.eigenvectors * eig.eigenvalues.asDiagonal()).norm();
  if (residual > kEigenTol * scale) {
    throw Error(ErrorKind::NoConvergence,
                "reconstruction residual " + std::to_string(residual / scale));
  }
  return eig;
}

ComplexMatrix matrix_exp_i(const EigenDecomposition& eig, double scale) {
  const Eigen::Index n = eig.eigenvalues.size();
  ComplexVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::polar(1.0, -scale * eig.eigenvalues(k));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix matrix_exp_i(const ComplexMatrix& a, double scale) {
  if (scale == 0.0) {
    return ComplexMatrix::Identity(a.rows(), a.cols());
  }
  return matrix_exp_i(hermitian_eig(a), scale);
}

ComplexMatrix partial_trace_mode(const ComplexMatrix& rho, std::size_t mode_dim) {
  const auto d = static_cast<Eigen::Index>(mode_dim);
  if (d == 0 || rho.rows() != 4 * d || rho.cols() != 4 * d) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected a " + std::to_string(4 * d) + "x" + std::to_string(4 * d) +
                    " operator, got " + std::to_string(rho.rows()) + "x" +
                    std::to_string(rho.cols()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      out(i, j) = rho.block(i * d, j * d, d, d).trace();
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && (a - a.adjoint()).norm() <= tol * std::max(a.norm(), 1.0);
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols())).norm() <= tol;
}

bool is_density(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  if (std::abs(a.trace() - Complex(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (a + a.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues().minCoeff() >= -tol;
}

EigenDecomposition density_eig(const ComplexMatrix& rho) {
  EigenDecomposition eig = hermitian_eig(rho);
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    double& lambda = eig.eigenvalues(k);
    if (lambda < -kPositivityTol) {
      throw Error(ErrorKind::NotPositive, "eigenvalue " + std::to_string(lambda));
    }
    lambda = std::max(lambda, 0.0);
  }
  return eig;
}

ComplexMatrix density_factor(const ComplexMatrix& rho) {
  const EigenDecomposition eig = density_eig(rho);
  return eig.eigenvectors * eig.eigenvalues.cwiseSqrt().asDiagonal();
}

RealVector singular_values(const ComplexMatrix& b) {
  const Eigen::Index n = b.rows();
  if (b.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "singular_values needs a square matrix");
  }
  ComplexMatrix dilation = ComplexMatrix::Zero(2 * n, 2 * n);
  dilation.topRightCorner(n, n) = b;
  dilation.bottomLeftCorner(n, n) = b.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(dilation, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "dilation eigensolver failed");
  }
  // Spectrum is {+s_k, -s_k}; the top n eigenvalues are the singular values.
  RealVector s = solver.eigenvalues().tail(n).reverse();
  return s.cwiseMax(0.0);
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const ComplexMatrix diff = rho - sigma;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (diff + diff.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double fidelity_with_pure(const ComplexVector& psi, const ComplexMatrix& rho) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

ComplexMatrix projector(const ComplexVector& psi) { return psi * psi.adjoint(); }

}  // namespace dqed
