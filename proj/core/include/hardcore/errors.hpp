#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hardcore {

// Precondition of an operation was not met by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or solver refused to exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t reached, std::uint64_t budget)
      : std::runtime_error(what + ": reached " + std::to_string(reached) +
                           " (budget " + std::to_string(budget) + ")"),
        reached_(reached),
        budget_(budget) {}

  std::uint64_t reached() const { return reached_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t reached_;
  std::uint64_t budget_;
};

// Conditioning on an event of zero mass.
class EmptyEvent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The normalized transport distance divides by m2; it is undefined when m2 = 0.
class DegenerateNormalization : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Monte Carlo input too unreliable to certify anything (e.g. sampler FAIL rate).
class DataQualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardcore
