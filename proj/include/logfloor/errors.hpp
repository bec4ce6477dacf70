#pragma once

#include <stdexcept>

namespace logfloor {

/// Two independent computations of the same quantity disagreed. This always
/// indicates a bug (or an unhandled expansion-convention edge), never a
/// mathematical verdict; the CLI maps it to exit code 2.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace logfloor
