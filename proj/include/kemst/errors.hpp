#pragma once

#include <stdexcept>
#include <string>

namespace kemst {

// Argument outside the domain of a function, e.g. evaluating past the horizon.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid or inconsistent parameter value.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation not defined for this kind of input.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input too large for an exhaustive routine.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A regime's input requirement does not hold (e.g. unnormalized coordinates).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A slide or rotation that does not yield a spanning tree.
class InvalidMoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bound that must always hold was observed to fail.
class AuditFailure : public std::runtime_error {
 public:
  AuditFailure(const std::string& what, std::size_t record)
      : std::runtime_error(what), record_(record) {}

  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

}  // namespace kemst
