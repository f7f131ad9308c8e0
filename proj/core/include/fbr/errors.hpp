#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fbr {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// J_nu(0) for -1 < nu < 0.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Gamma evaluated at a nonpositive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A zero of J_nu could not be bracketed and certified.
class ZeroBracketError : public std::runtime_error {
 public:
  ZeroBracketError(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A zero table does not reach the requested radius or mode.
class TableTooShort : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Composite quadrature did not settle under panel doubling.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double change)
      : std::runtime_error(what), change_(change) {}
  double change() const noexcept { return change_; }

 private:
  double change_;
};

class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration; `field` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace fbr
