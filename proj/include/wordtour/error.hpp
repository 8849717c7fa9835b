#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordtour {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, or 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, const std::string& source = {})
      : Error(format(message, line, source)), message_(message), line_(line) {}

  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

  /// Same error, reported against a named file.
  ParseError in(const std::string& source) const { return ParseError(message_, line_, source); }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            const std::string& source) {
    std::string out = source.empty() ? "" : source + ": ";
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    return out + message;
  }

  std::string message_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied value violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested principal component is not defined for the data.
class DegenerateComponent : public Error {
 public:
  using Error::Error;
};

}  // namespace wordtour
