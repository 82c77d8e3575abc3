#pragma once

#include <stdexcept>
#include <string>

namespace diknn {

// Error hierarchy mapped onto CLI exit codes by the tool front end:
// UsageError -> 2, InsufficientDataError -> 3, NumericalError -> 4.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string& msg) : Error(msg) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

}  // namespace diknn
