#pragma once

#include <stdexcept>
#include <string>

namespace homgrowth {

/// Base of every error this library throws; `module()` names the subsystem
/// that raised it so front ends can surface provenance.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// Malformed or inconsistent input (parse errors, invalid quotient specs,
/// dimension mismatches, violated preconditions).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration ran past its configured budget. Nothing partial is
/// returned through the exception.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An independently re-checked certificate or invariant did not hold.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace homgrowth
