#pragma once

#include <stdexcept>
#include <string>

namespace heunwell {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter record or user input violates a documented invariant.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of a mathematical operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration exhausted its budget before converging.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A root could not be bracketed on the requested interval.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

/// A closed-form expression hit a vanishing denominator or a degenerate
/// hypergeometric parameter (measure-zero parameter event).
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

/// The spectrum function was evaluated exactly at one of its poles.
class PoleError : public Error {
 public:
  using Error::Error;
};

}  // namespace heunwell
