#pragma once

#include <stdexcept>
#include <string>

namespace glasner {

/// Thrown when an operation would exceed its elementary-term budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown on malformed input files; the message carries the position.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace glasner
