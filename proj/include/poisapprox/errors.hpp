#pragma once

#include <stdexcept>
#include <string>

namespace poisapprox {

/// Base class for every error raised by the library. `code()` is a short
/// stable token used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A stated hypothesis of an identity does not hold (e.g. theta >= 1).
class ValidityError : public Error {
 public:
  explicit ValidityError(const std::string& what) : Error("validity", what) {}
};

/// Caller-side precondition of an inequality is violated.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

/// Floating-point cancellation makes the result untrustworthy.
class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error("precision", what) {}
};

/// Two independent evaluation routes disagree beyond tolerance.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error("consistency", what) {}
};

/// Unknown identifier or unsupported combination of options.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

/// Malformed input document.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error("input", what) {}
};

}  // namespace poisapprox
