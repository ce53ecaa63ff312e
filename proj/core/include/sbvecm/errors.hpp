#pragma once

#include <stdexcept>
#include <string>

namespace sbvecm {

// Malformed input: wrong dimensions, non-Hermitian matrices, bad codes.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative routine did not reach its tolerance.
class IterationError : public std::runtime_error {
public:
  IterationError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

// Loss of positive definiteness, singular systems, non-finite intermediates.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// The Gibbs chain could not find admissible draws often enough.
class ChainAbort : public std::runtime_error {
public:
  ChainAbort(const std::string& what, long attempted, long accepted)
      : std::runtime_error(what), attempted_(attempted), accepted_(accepted) {}
  long attempted() const noexcept { return attempted_; }
  long accepted() const noexcept { return accepted_; }

private:
  long attempted_;
  long accepted_;
};

// Throws ValidationError with `message` unless `condition` holds.
void require(bool condition, const std::string& message);

}  // namespace sbvecm
