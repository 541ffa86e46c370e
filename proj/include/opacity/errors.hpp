#pragma once

#include <stdexcept>
#include <string>

namespace opacity {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the file name and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class EmptyPolytope : public Error {
 public:
  using Error::Error;
};

class ChoiceOutsideInterval : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class NotObservationLive : public Error {
 public:
  using Error::Error;
};

class StateBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DegenerateRow : public Error {
 public:
  using Error::Error;
};

class UnreachableSimClass : public Error {
 public:
  using Error::Error;
};

class ModalEdgesPresent : public Error {
 public:
  using Error::Error;
};

class HorizonTooShort : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

}  // namespace opacity
