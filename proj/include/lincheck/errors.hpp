#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lincheck {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- symbolic ---------------------------------------------------------------

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, std::string found);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
  std::string found_;
};

class UnknownSymbol : public Error {
 public:
  UnknownSymbol(std::size_t position, std::string name);

  std::size_t position() const noexcept { return position_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t position_;
  std::string name_;
};

/// A transcendental node blocks conversion to the exact rational subset.
class NotRational : public Error {
 public:
  using Error::Error;
};

/// A declared constant was referenced without a bound value.
class UnboundSymbol : public Error {
 public:
  explicit UnboundSymbol(const std::string& name)
      : Error("symbol '" + name + "' has no bound value"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ExpressionTooLarge : public Error {
 public:
  ExpressionTooLarge(std::size_t terms, std::size_t cap);
  std::size_t terms() const noexcept { return terms_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t terms_;
  std::size_t cap_;
};

/// Numeric evaluation hit a pole or left the real domain of log/sqrt.
class EvalDomainError : public Error {
 public:
  EvalDomainError(const std::string& what, std::string subexpression)
      : Error(what + ": " + subexpression), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

// ---- tensor / criteria ------------------------------------------------------

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class InvalidMetric : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonGeodesicType : public Error {
 public:
  explicit NonGeodesicType(std::vector<std::string> components);
  const std::vector<std::string>& components() const noexcept { return components_; }

 private:
  std::vector<std::string> components_;
};

class DeltaIdenticallyZero : public Error {
 public:
  using Error::Error;
};

class NotConstant : public Error {
 public:
  using Error::Error;
};

// ---- verify -----------------------------------------------------------------

class StepLimitExceeded : public Error {
 public:
  StepLimitExceeded(std::size_t requested, std::size_t limit);
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

class NotSimplifiable : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace lincheck
