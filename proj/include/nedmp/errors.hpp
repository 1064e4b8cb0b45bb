#pragma once

#include <stdexcept>
#include <string>

namespace nedmp {

// Malformed files, schema violations, broken data invariants.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values or failed numeric procedures.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nedmp
