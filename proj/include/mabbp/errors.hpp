#pragma once

#include <stdexcept>
#include <string>

namespace mabbp {

// Argument outside the mathematical domain of a function (m = 0, u < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke an operation's precondition (e.g. eliminating from <= K arms).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Inconsistent configuration: mixed list lengths, dimension mismatch, bad knobs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested more pulls than an arm has unconsumed rewards.
class OverdrawError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Reward range of zero width; every arm has the same mean.
class DegenerateRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mabbp
