#include "sdd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace sdd::linalg {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionMismatch(std::string(who) + ": matrix must be square and nonempty");
  }
}

// Sort permutation by (Re, Im, index).
std::vector<Eigen::Index> eigenvalue_order(const ComplexVector& values) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
    if (values[i].real() != values[j].real()) return values[i].real() < values[j].real();
    return values[i].imag() < values[j].imag();
  });
  return idx;
}

EigenDecomposition permuted(const ComplexVector& values, const ComplexMatrix& vectors) {
  const auto order = eigenvalue_order(values);
  EigenDecomposition out;
  out.eigenvalues.resize(values.size());
  out.eigenvectors.resize(vectors.rows(), vectors.cols());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    out.eigenvalues[k] = values[order[static_cast<std::size_t>(k)]];
    out.eigenvectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace

double operator_norm(const ComplexMatrix& a) {
  require_square(a, "operator_norm");
  if (!a.allFinite()) throw Error("operator_norm: non-finite entries");
  const ComplexMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("operator_norm: eigen iteration failed");
  }
  const double top = solver.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = operator_norm(a);
  const double defect = operator_norm(ComplexMatrix(a - a.adjoint()));
  return defect <= rel_tol * std::max(scale, 1e-300);
}

bool is_unitary(const ComplexMatrix& u, double abs_tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix gram = u.adjoint() * u;
  const ComplexMatrix eye = ComplexMatrix::Identity(u.rows(), u.cols());
  return operator_norm(ComplexMatrix(gram - eye)) <= abs_tol;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  require_square(a, "hermitian_eig");
  if (!is_hermitian(a)) throw NotHermitian("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("hermitian_eig: eigen iteration failed");
  }
  // SelfAdjointEigenSolver already sorts ascending; eigenvalues are real.
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().cast<Complex>();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

EigenDecomposition unitary_eig(const ComplexMatrix& u) {
  require_square(u, "unitary_eig");
  if (!is_unitary(u)) throw NotUnitary("unitary_eig: input is not unitary");
  Eigen::ComplexSchur<ComplexMatrix> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw NoConvergence("unitary_eig: Schur iteration failed");
  }
  const ComplexMatrix& t = schur.matrixT();
  ComplexVector values = t.diagonal();
  // A unitary matrix is normal, so the strictly upper part of T is pure
  // roundoff. Guard against a silently wrong basis anyway.
  ComplexMatrix upper = t.triangularView<Eigen::StrictlyUpper>();
  if (upper.norm() > 1e-8 * std::max<double>(1.0, static_cast<double>(u.rows()))) {
    throw NoConvergence("unitary_eig: Schur form not diagonal");
  }
  return permuted(values, schur.matrixU());
}

ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double s) {
  const EigenDecomposition eig = hermitian_eig(h);
  ComplexVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::exp(Complex(0.0, -eig.eigenvalues[k].real() * s));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix expm_general(const ComplexMatrix& a) {
  require_square(a, "expm_general");
  if (!a.allFinite()) throw Error("expm_general: non-finite entries");
  if (operator_norm(a) > 1e6) {
    throw Overflow("expm_general: norm too large for scaling-and-squaring");
  }
  ComplexMatrix result = a.exp();
  if (!result.allFinite()) throw Overflow("expm_general: result overflowed");
  return result;
}

}  // namespace sdd::linalg
