#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dqed/error.hpp"
#include "dqed/linalg.hpp"
#include "dqed/model.hpp"
#include "support.hpp"

using namespace dqed;
using namespace dqed::testing;

namespace {

ComplexMatrix pauli_z_literal() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexVector basis(Eigen::Index dim, Eigen::Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("kron of identities is the identity") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(kron(i2, i2) == ComplexMatrix::Identity(4, 4));
}

TEST_CASE("kron(sigma_z, I) has diagonal (1, 1, -1, -1)") {
  const ComplexMatrix m = kron(pauli_z_literal(), ComplexMatrix::Identity(2, 2));
  CHECK(m.diagonal().real() == Eigen::Vector4d(1, 1, -1, -1));
  CHECK((m - ComplexMatrix(m.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("kron(sigma+, sigma-) maps |0>|1> to |1>|0>") {
  ComplexMatrix sp = ComplexMatrix::Zero(2, 2);
  sp(1, 0) = 1.0;
  const ComplexMatrix op = kron(sp, sp.adjoint());
  // Basis index 2 * i_a + i_b: |01> = 1, |10> = 2.
  CHECK((op * basis(4, 1) - basis(4, 2)).norm() == 0.0);
  CHECK((op * basis(4, 2)).norm() == 0.0);
}

TEST_CASE("kron mixed-product and associativity") {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = gaussian_matrix(rng, 2, 3);
  const ComplexMatrix b = gaussian_matrix(rng, 3, 2);
  const ComplexMatrix c = gaussian_matrix(rng, 3, 2);
  const ComplexMatrix d = gaussian_matrix(rng, 2, 4);
  CHECK((kron(a, b) * kron(c, d) - kron(a * c, b * d)).norm() < 1e-12);
  CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).norm() < 1e-14);
}

TEST_CASE("hermitian_eig of simple matrices") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 2.0;
  const EigenDecomposition eig = hermitian_eig(d);
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(eig.eigenvalues(2) == doctest::Approx(3.0));

  const EigenDecomposition sx = hermitian_eig(sigma_x());
  CHECK(sx.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig of the uncoupled Hamiltonian enumerates bare levels") {
  const SystemParams p(1.0, 1.3, 0.8, 0.0, 0.0);
  const HilbertIndex h(2);
  std::vector<double> expected;
  for (double sa : {-1.0, 1.0}) {
    for (double sb : {-1.0, 1.0}) {
      for (int n = 0; n <= 2; ++n) {
        expected.push_back(0.5 * sa * p.omega_a() + 0.5 * sb * p.omega_b() + n * p.omega());
      }
    }
  }
  std::sort(expected.begin(), expected.end());
  const EigenDecomposition eig = hermitian_eig(build_full_hamiltonian(p, h));
  REQUIRE(eig.eigenvalues.size() == static_cast<Eigen::Index>(expected.size()));
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(eig.eigenvalues(static_cast<Eigen::Index>(k)) == doctest::Approx(expected[k]).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig residual and orthonormality on random matrices") {
  std::mt19937_64 rng(7);
  for (Eigen::Index dim : {1, 4, 17, 64}) {
    const ComplexMatrix a = random_hermitian(rng, dim);
    const EigenDecomposition eig = hermitian_eig(a);
    const ComplexMatrix& v = eig.eigenvectors;
    CHECK((a * v - v * eig.eigenvalues.asDiagonal()).norm() <= 1e-10 * a.norm());
    CHECK(is_unitary(v, 1e-10));
    for (Eigen::Index k = 1; k < dim; ++k) CHECK(eig.eigenvalues(k) >= eig.eigenvalues(k - 1));
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian and non-square input") {
  ComplexMatrix a = sigma_x();
  a(0, 1) = 2.0;
  CHECK_THROWS_AS(hermitian_eig(a), Error);
  try {
    hermitian_eig(a);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  try {
    hermitian_eig(ComplexMatrix::Zero(2, 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("matrix_exp_i") {
  std::mt19937_64 rng(11);
  SUBCASE("zero time gives the identity") {
    const ComplexMatrix a = random_hermitian(rng, 5);
    CHECK((matrix_exp_i(a, 0.0) - ComplexMatrix::Identity(5, 5)).norm() == 0.0);
  }
  SUBCASE("exp(-i pi/2 sigma_z) = -i sigma_z by hand") {
    const ComplexMatrix u = matrix_exp_i(pauli_z_literal(), M_PI / 2.0);
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = Complex(0.0, -1.0);
    expected(1, 1) = Complex(0.0, 1.0);
    CHECK((u - expected).norm() < 1e-15);
  }
  SUBCASE("group property U(t1) U(t2) = U(t1 + t2)") {
    const ComplexMatrix a = random_hermitian(rng, 8);
    const double t1 = 0.37;
    const double t2 = 1.91;
    CHECK((matrix_exp_i(a, t1) * matrix_exp_i(a, t2) - matrix_exp_i(a, t1 + t2)).norm() < 1e-12);
  }
  SUBCASE("unitary for random Hermitian matrices up to dimension 64") {
    for (Eigen::Index dim : {2, 8, 31, 64}) {
      const ComplexMatrix a = random_hermitian(rng, dim);
      CHECK(is_unitary(matrix_exp_i(a, 3.7), 1e-10));
    }
  }
}

TEST_CASE("partial_trace_mode") {
  std::mt19937_64 rng(3);
  SUBCASE("product with a Fock projector returns the atomic state exactly") {
    const ComplexMatrix atoms = random_density(rng, 4, 4);
    ComplexMatrix fock = ComplexMatrix::Zero(5, 5);
    fock(3, 3) = 1.0;
    CHECK(partial_trace_mode(kron(atoms, fock), 5) == atoms);
  }
  SUBCASE("Bell state times any field state") {
    ComplexVector phi_plus = ComplexVector::Zero(4);
    phi_plus(0) = phi_plus(3) = std::sqrt(0.5);
    const ComplexMatrix field = random_density(rng, 6, 3);
    CHECK((partial_trace_mode(kron(projector(phi_plus), field), 6) - projector(phi_plus)).norm() <
          1e-14);
  }
  SUBCASE("atom-mode entangled state reduces to an equal mixture") {
    // (|psi+>|0> + |11>|1>) / sqrt(2), mode dimension 2.
    ComplexVector v = ComplexVector::Zero(8);
    const double r = std::sqrt(0.5);
    v(1 * 2 + 0) = 0.5;  // |01>|0>
    v(2 * 2 + 0) = 0.5;  // |10>|0>
    v(3 * 2 + 1) = r;    // |11>|1>
    const ComplexMatrix reduced = partial_trace_mode(projector(v), 2);
    const EigenDecomposition eig = hermitian_eig(reduced);
    CHECK(eig.eigenvalues(3) == doctest::Approx(0.5));
    CHECK(eig.eigenvalues(2) == doctest::Approx(0.5));
    CHECK(std::abs(eig.eigenvalues(1)) < 1e-15);
  }
  SUBCASE("trace preserving and linear on random densities") {
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix a = random_density(rng, 28, 5);
      const ComplexMatrix b = random_density(rng, 28, 28);
      const double w = 0.3;
      CHECK(std::abs(partial_trace_mode(a, 7).trace() - a.trace()) < 1e-12);
      const ComplexMatrix lhs = partial_trace_mode(w * a + (1 - w) * b, 7);
      const ComplexMatrix rhs = w * partial_trace_mode(a, 7) + (1 - w) * partial_trace_mode(b, 7);
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(partial_trace_mode(ComplexMatrix::Identity(10, 10), 3), Error);
  }
}

TEST_CASE("density predicates and factors") {
  std::mt19937_64 rng(5);
  const ComplexMatrix rho = random_density(rng, 4, 2);
  CHECK(is_density(rho, 1e-10));
  CHECK_FALSE(is_density(2.0 * rho, 1e-10));
  const ComplexMatrix a = density_factor(rho);
  CHECK((a * a.adjoint() - rho).norm() < 1e-13);

  CHECK_NOTHROW(density_eig(projector(random_pure(rng, 4)) - 1e-11 * ComplexMatrix::Identity(4, 4)));

  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  try {
    density_eig(negative);
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositive);
  }
}

TEST_CASE("singular values agree with an SVD oracle") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix b = gaussian_matrix(rng, 4, 4);
    const Eigen::JacobiSVD<ComplexMatrix> svd(b);
    CHECK((singular_values(b) - svd.singularValues()).norm() < 1e-12);
  }
}

TEST_CASE("trace distance") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(trace_distance(a, a) == 0.0);
  CHECK(trace_distance(a, 0.5 * ComplexMatrix::Identity(2, 2)) == doctest::Approx(0.5));
}
