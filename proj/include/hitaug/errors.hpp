#pragma once

#include <stdexcept>
#include <string>

namespace hitaug {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

class InvalidBipartition : public Error {
 public:
  using Error::Error;
};

class MalformedInput : public Error {
 public:
  using Error::Error;
};

// A red node was asked to take more shortcuts than it has non-adjacent blue nodes.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

// Raised when a proven structural bound fails on computed values.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hitaug
