#pragma once

#include <stdexcept>
#include <string>

namespace scramble {

// Raised for malformed arguments: sizes out of range, bad rates, etc.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotNormalized : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ShapeMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DimensionTooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class TooSmall : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Analysis failures.
class NoOverlap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runtime guards. The CLI maps these to exit code 3.
class GuardViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StiffnessGuard : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

}  // namespace scramble
