#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpgen {

// Base for every data error raised by the library. The CLI maps these to
// exit code 2; usage problems never reach the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in one of the text formats. `position` is a byte offset for
// single-expression inputs (SPL) and a 1-based line number for line formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class LatticeError : public Error {
 public:
  using Error::Error;
};

class RealizationError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpgen
