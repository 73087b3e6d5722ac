#pragma once

#include <stdexcept>
#include <string>

namespace coarma {

/// Invalid parameter or argument outside its mathematical domain.
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Dimension/order mismatch between a spec and the data handed to it.
class shape_error : public std::invalid_argument {
 public:
  explicit shape_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Root finding or another numeric routine failed to converge.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation not defined for the given family (e.g. density of a
/// copula with a singular component).
class unsupported_error : public std::runtime_error {
 public:
  explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Model-string or token parse failure; carries the offending position.
class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

/// File / IO failure.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace coarma
