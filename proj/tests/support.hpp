#pragma once

#include <random>

#include "dqed/error.hpp"
#include "dqed/linalg.hpp"

namespace dqed::testing {

inline ComplexMatrix sigma_x() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline ComplexMatrix sigma_y() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline ComplexMatrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const ComplexMatrix g = gaussian_matrix(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

// Ginibre-distributed density matrix of the given rank.
inline ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index dim, Eigen::Index rank) {
  const ComplexMatrix g = gaussian_matrix(rng, dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline ComplexVector random_pure(std::mt19937_64& rng, Eigen::Index dim) {
  ComplexVector v = gaussian_matrix(rng, dim, 1).col(0);
  return v.normalized();
}

// True iff f throws dqed::Error of the given kind.
template <class F>
bool throws_kind(F&& f, ErrorKind kind) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace dqed::testing
