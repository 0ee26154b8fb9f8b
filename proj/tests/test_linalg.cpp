#include <doctest.h>

#include "sdd/linalg.hpp"
#include "sdd/operators.hpp"
#include "test_helpers.hpp"

using namespace sdd;
using linalg::operator_norm;

namespace {

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("hermitian_eig: Pauli and identity spectra") {
  const auto eig_z = linalg::hermitian_eig(ops::pauli(ops::Pauli::Z));
  CHECK(eig_z.eigenvalues[0].real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig_z.eigenvalues[1].real() == doctest::Approx(1.0).epsilon(1e-14));

  const auto eig_id = linalg::hermitian_eig(ComplexMatrix::Identity(4, 4));
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(eig_id.eigenvalues[k] - Complex(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("hermitian_eig: random 8x8 reconstruction and orthonormality") {
  const ComplexMatrix a = testing::random_hermitian(8, 42);
  const auto eig = linalg::hermitian_eig(a);
  const ComplexMatrix reconstructed =
      eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
  CHECK(operator_norm(ComplexMatrix(a - reconstructed)) <= 1e-9 * operator_norm(a));
  const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
  CHECK(operator_norm(ComplexMatrix(gram - ComplexMatrix::Identity(8, 8))) <= 1e-10);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(eig.eigenvalues[k].imag()) < 1e-12);
  for (int k = 1; k < 8; ++k) {
    CHECK(eig.eigenvalues[k - 1].real() <= eig.eigenvalues[k].real());
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix nilpotent = ComplexMatrix::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  CHECK_THROWS_AS(linalg::hermitian_eig(nilpotent), NotHermitian);
}

TEST_CASE("hermitian_eig is bit-stable across repeated runs") {
  const ComplexMatrix a = testing::random_hermitian(6, 7);
  const auto first = linalg::hermitian_eig(a);
  const auto second = linalg::hermitian_eig(a);
  CHECK((first.eigenvalues - second.eigenvalues).norm() == 0.0);
  CHECK((first.eigenvectors - second.eigenvectors).norm() == 0.0);
}

TEST_CASE("unitary_eig: sigma_x, parity diagonal, random unitary") {
  const auto eig_x = linalg::unitary_eig(ops::pauli(ops::Pauli::X));
  CHECK(eig_x.eigenvalues[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig_x.eigenvalues[1].real() == doctest::Approx(1.0).epsilon(1e-12));

  // e^{i pi a^dag a} truncated to D Fock levels has eigenvalues (-1)^n.
  const auto parity = ops::parity_phase_pulse(ops::BosonicSpace{6}, M_PI);
  const auto eig_p = linalg::unitary_eig(parity);
  int minus = 0, plus = 0;
  for (int k = 0; k < 6; ++k) {
    CHECK(std::abs(std::abs(eig_p.eigenvalues[k]) - 1.0) <= 1e-10);
    (eig_p.eigenvalues[k].real() < 0 ? minus : plus)++;
  }
  CHECK(minus == 3);
  CHECK(plus == 3);

  const ComplexMatrix u = testing::random_unitary(8, 99);
  const auto eig_u = linalg::unitary_eig(u);
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(std::abs(eig_u.eigenvalues[k]) - 1.0) <= 1e-10);
  }
  const ComplexMatrix residual =
      u * eig_u.eigenvectors - eig_u.eigenvectors * eig_u.eigenvalues.asDiagonal();
  CHECK(operator_norm(residual) <= 1e-9);
}

TEST_CASE("unitary_eig rejects non-unitary input") {
  CHECK_THROWS_AS(linalg::unitary_eig(ComplexMatrix(2.0 * ComplexMatrix::Identity(3, 3))),
                  NotUnitary);
}

TEST_CASE("expm_hermitian_generator: trivial values and unitarity") {
  const ComplexMatrix h = testing::random_hermitian(5, 3);
  CHECK(operator_norm(ComplexMatrix(linalg::expm_hermitian_generator(h, 0.0) -
                                    ComplexMatrix::Identity(5, 5))) <= 1e-12);

  // Diagonal generator: e^{-i diag(1,-1) pi/2} = diag(e^{-i pi/2}, e^{i pi/2}).
  const ComplexMatrix u = linalg::expm_hermitian_generator(diag2(1.0, -1.0), M_PI / 2.0);
  CHECK(std::abs(u(0, 0) - Complex(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(u(1, 1) - Complex(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(u(0, 1)) < 1e-14);

  const ComplexMatrix v = linalg::expm_hermitian_generator(h, 0.7);
  CHECK(linalg::is_unitary(v, 1e-10));
  CHECK(operator_norm(ComplexMatrix(v * linalg::expm_hermitian_generator(h, -0.7) -
                                    ComplexMatrix::Identity(5, 5))) <= 1e-10);
}

TEST_CASE("expm_general: zero, nilpotent, commuting pair") {
  CHECK(operator_norm(ComplexMatrix(linalg::expm_general(ComplexMatrix::Zero(3, 3)) -
                                    ComplexMatrix::Identity(3, 3))) <= 1e-14);

  ComplexMatrix nilpotent = ComplexMatrix::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  const ComplexMatrix e = linalg::expm_general(nilpotent);
  CHECK(std::abs(e(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(e(0, 1) - 1.0) < 1e-14);
  CHECK(std::abs(e(1, 0)) < 1e-14);
  CHECK(std::abs(e(1, 1) - 1.0) < 1e-14);

  // A and p(A) commute, so e^A e^{p(A)} = e^{A + p(A)}.
  const ComplexMatrix a = 0.3 * testing::random_matrix(4, 11);
  const ComplexMatrix b = a * a + 2.0 * a + ComplexMatrix::Identity(4, 4);
  const ComplexMatrix lhs = linalg::expm_general(a) * linalg::expm_general(b);
  const ComplexMatrix rhs = linalg::expm_general(ComplexMatrix(a + b));
  CHECK(operator_norm(ComplexMatrix(lhs - rhs)) <= 1e-9 * operator_norm(rhs));
}

TEST_CASE("expm_general overflow guard") {
  CHECK_THROWS_AS(linalg::expm_general(ComplexMatrix(1e7 * ComplexMatrix::Identity(2, 2))),
                  Overflow);
}

TEST_CASE("operator_norm: identity, unitary, contracted unitary") {
  CHECK(operator_norm(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-14));
  const ComplexMatrix u = testing::random_unitary(6, 17);
  CHECK(operator_norm(u) == doctest::Approx(1.0).epsilon(1e-10));

  // ||(1 - e^{-gamma t/2}) u|| = 1 - e^{-gamma t/2}.
  const double shrink = 1.0 - std::exp(-0.5 * 1.3);
  CHECK(operator_norm(ComplexMatrix(shrink * u)) == doctest::Approx(shrink).epsilon(1e-10));
}

TEST_CASE("operator_norm is unitarily invariant") {
  const ComplexMatrix a = testing::random_matrix(6, 23);
  const ComplexMatrix v = testing::random_unitary(6, 29);
  CHECK(operator_norm(ComplexMatrix(v * a * v.adjoint())) ==
        doctest::Approx(operator_norm(a)).epsilon(1e-10));
}
