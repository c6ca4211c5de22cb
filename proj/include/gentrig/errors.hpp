// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace gentrig {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The defining integral diverges at the requested endpoint
/// (e.g. arcsin_p(1) with p <= 1).
class DivergentEndpoint : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Evaluation at a pole of tan_p (odd multiple of pi_p/2, p > 1).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Point too close to a domain boundary for reliable kernel evaluation.
class BoundaryProximity : public DomainError {
 public:
  using DomainError::DomainError;
};

/// integrate() called with lower >= upper or non-finite bounds.
class InvalidInterval : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Singularity exponent >= 1: the integral does not converge.
class NonIntegrable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Kernel bundle requested for a derived family (Cos, Cosh).
class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Geometric bracket expansion exceeded its cap (2^60).
class BracketOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gentrig
