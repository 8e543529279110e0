#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace telescope {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct TypeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedExpression : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
  ParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg), position(pos) {}
  std::size_t position;
};

struct SingularPointError : std::runtime_error {
  SingularPointError(const std::string& msg, long idx)
      : std::runtime_error(msg), index(idx) {}
  long index;
};

}  // namespace telescope
