#pragma once

#include <stdexcept>
#include <string>

namespace thetatqft {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input (bad JSON, wrong shapes, invalid arguments).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input is well-formed but outside a documented size or domain guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Mathematical precondition violated (level mismatch, non-Lagrangian, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

}  // namespace thetatqft
