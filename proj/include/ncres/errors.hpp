#pragma once

#include <stdexcept>
#include <string>

namespace ncres {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or input file. `position` is a 0-based column for
/// expressions, `line` a 1-based line for input files (0 when not known).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : Error(what), position_(position), line_(line) {}
  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

/// A coordinate change would rewrite a divisorial variable by a non-unit.
class AdaptednessError : public Error {
 public:
  using Error::Error;
};

/// The input is outside the shapes this implementation decides.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A weighted center is not admissible for the ideal it is applied to.
class NotAdmissibleError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested on the excluded vertex of a cobordant chart.
class VertexPointError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Never a legitimate outcome.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncres
