#pragma once

#include <stdexcept>
#include <string>

namespace finconn {

// Exit-code convention: 2 for invalid inputs/config, 3 for resource limits.
class Error : public std::runtime_error {
 public:
  Error(std::string msg, int exit_code)
      : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::string msg) : Error(std::move(msg), 2) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(std::string msg) : Error(std::move(msg), 3) {}
};

}  // namespace finconn
