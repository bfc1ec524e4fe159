#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace momentumlab {

using cplx = std::complex<double>;

// Vectors of E and functionals of E' share a coordinate representation; the
// pairing <alpha, v> is the Euclidean dot product in the fixed dual basis.
using Vec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Error taxonomy. Everything derives from Error so callers can catch the
// family; the concrete type tells which contract was violated.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, empty lists, invalid values.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed or produced an unusable result.
class ComputationError : public Error {
 public:
  using Error::Error;
};

/// The input exceeds a supported size bound.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A point left the domain on which a kernel or action is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace momentumlab
