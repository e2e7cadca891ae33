#pragma once

#include <stdexcept>
#include <string>

namespace aoicov {

// Parameter tuple violates a documented invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a formula (e.g. alpha <= 2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The coverage constraint cannot be met even at p_s = 1.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string parameter, const std::string& what)
      : std::runtime_error(what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

// A result contradicts a structural guarantee (e.g. odd stationary-point count).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

}  // namespace aoicov
