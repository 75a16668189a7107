#pragma once

#include <stdexcept>
#include <string>

namespace divreg {

// Argument outside the mathematical domain of an operation (bad index,
// non-positive cutoff, pole evaluation, ...).
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string &what) : std::invalid_argument(what) {}
};

// A numerical routine produced a non-finite value or could not reach its
// tolerance and the caller asked for a hard failure.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string &what)
      : std::runtime_error(what) {}
};

// Least-squares design matrix too ill-conditioned to separate the basis.
class RankDeficientError : public NumericalError {
public:
  RankDeficientError(const std::string &what, std::string first,
                     std::string second, double condition)
      : NumericalError(what), first_(std::move(first)),
        second_(std::move(second)), condition_(condition) {}

  const std::string &first() const noexcept { return first_; }
  const std::string &second() const noexcept { return second_; }
  double condition() const noexcept { return condition_; }

private:
  std::string first_;
  std::string second_;
  double condition_;
};

} // namespace divreg
