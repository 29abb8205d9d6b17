#pragma once

#include <stdexcept>
#include <string>

namespace spr {

// Caller passed something outside an operation's contract.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DisconnectedPairError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Odd vertex count requested for a 3-regular graph.
class HandshakeError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Exact fallback (set cover, partition enumeration) would exceed its budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spr
