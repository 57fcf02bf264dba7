#pragma once

#include <stdexcept>
#include <string>

namespace msens {

// Bad input to an operation: unknown vertex, empty side, overlapping groups.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive enumeration would exceed its configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural invariant failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Cut reporting was asked for an edge that lies in no (s,t)-mincut.
class NotContained : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace msens
