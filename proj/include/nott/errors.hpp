#pragma once

#include <stdexcept>
#include <string>

namespace nott {

// Error classes carry the process exit code the CLI maps them to:
//   1 verification failure / oracle mismatch
//   2 parse or argument error
//   3 precision or horizon error
class Error : public std::runtime_error {
public:
  Error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

private:
  int exit_code_;
};

class ArgumentError : public Error {
public:
  explicit ArgumentError(const std::string& msg) : Error(msg, 2) {}
};

// Operands with mismatched modulus or precision.
class IncompatibleError : public ArgumentError {
public:
  using ArgumentError::ArgumentError;
};

// Series support outside a filtration's legal exponent set.
class MembershipError : public ArgumentError {
public:
  using ArgumentError::ArgumentError;
};

class PrecisionError : public Error {
public:
  explicit PrecisionError(const std::string& msg) : Error(msg, 3) {}
};

class HorizonError : public Error {
public:
  explicit HorizonError(const std::string& msg) : Error(msg, 3) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (position " + std::to_string(position) + ")", 2),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace nott
