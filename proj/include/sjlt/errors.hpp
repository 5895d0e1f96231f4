#pragma once

#include <stdexcept>
#include <string>

namespace sjlt {

/// An exhaustive enumeration would exceed its configured size limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sjlt
