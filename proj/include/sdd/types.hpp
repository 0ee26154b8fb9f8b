#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sdd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Central tolerances. Tests and library code share these so that a contract
// stated once holds everywhere.
namespace tol {
inline constexpr double hermiticity = 1e-10;      // ||A - A^dag|| / ||A||
inline constexpr double unitarity = 1e-10;        // ||U^dag U - 1||
inline constexpr double reconstruction = 1e-9;    // ||A - V L V^dag|| / ||A||
inline constexpr double cycle_identity = 1e-8;    // ||U_cycle - 1||
inline constexpr double cluster_default = 1e-8;   // eigenphase gap threshold
inline constexpr double commutant = 1e-8;         // ||[P(X), U]||
inline constexpr double projector_fixpoint = 1e-10;
inline constexpr double state_hermiticity = 1e-8;
inline constexpr double trace_one = 1e-10;
inline constexpr double positivity_floor = -1e-10;
}  // namespace tol

// Error hierarchy. The CLI maps ConfigError to exit code 2 and every other
// Error to exit code 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(const std::string& what) : Error(what) {}
};

class NotUnitary : public Error {
 public:
  explicit NotUnitary(const std::string& what) : Error(what) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& what) : Error(what) {}
};

class Overflow : public Error {
 public:
  explicit Overflow(const std::string& what) : Error(what) {}
};

class EmptyList : public Error {
 public:
  explicit EmptyList(const std::string& what) : Error(what) {}
};

class EmptyEnsemble : public Error {
 public:
  explicit EmptyEnsemble(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class DimensionTooLarge : public Error {
 public:
  explicit DimensionTooLarge(const std::string& what) : Error(what) {}
};

class PhiOutOfRange : public Error {
 public:
  explicit PhiOutOfRange(const std::string& what) : Error(what) {}
};

class NegativeTime : public Error {
 public:
  explicit NegativeTime(const std::string& what) : Error(what) {}
};

class ClusterAmbiguity : public Error {
 public:
  explicit ClusterAmbiguity(const std::string& what) : Error(what) {}
};

class NotCycleMultiple : public Error {
 public:
  explicit NotCycleMultiple(const std::string& what) : Error(what) {}
};

class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace sdd
