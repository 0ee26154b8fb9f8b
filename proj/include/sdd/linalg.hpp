#pragma once

#include <vector>

#include "sdd/types.hpp"

namespace sdd::linalg {

// Spectral decomposition A = V diag(lambda) V^dag with orthonormal columns.
// Eigenvalues are sorted ascending by real part, ties broken by imaginary
// part, so identical inputs give bit-identical output.
struct EigenDecomposition {
  ComplexVector eigenvalues;
  ComplexMatrix eigenvectors;
};

// Largest singular value, computed from the spectrum of A^dag A.
double operator_norm(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double rel_tol = tol::hermiticity);
bool is_unitary(const ComplexMatrix& u, double abs_tol = tol::unitarity);

// Spectral decomposition of a Hermitian matrix. Throws NotHermitian if
// ||A - A^dag||_op > rel_tol * ||A||_op, NoConvergence on solver failure.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

// Spectral decomposition of a unitary matrix via Schur reduction; U is
// normal, so the Schur form is diagonal and the Schur basis is an
// orthonormal eigenbasis. Avoids matrix-logarithm branch cuts entirely.
EigenDecomposition unitary_eig(const ComplexMatrix& u);

// exp(-i H s) for Hermitian H; unitary by construction.
ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double s);

// exp(A) for a general square matrix (scaling-and-squaring with Pade
// approximants). Throws Overflow when the result cannot be represented.
ComplexMatrix expm_general(const ComplexMatrix& a);

}  // namespace sdd::linalg
