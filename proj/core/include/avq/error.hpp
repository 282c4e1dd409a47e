#pragma once

#include <stdexcept>
#include <string>

namespace avq {

// Failure taxonomy. The enum values double as CLI exit codes.
enum class ErrorKind : int {
  parse = 2,          // malformed document / schema violation
  invariant = 3,      // value-level invariant violated (trace, PSD, shape, ...)
  cap = 4,            // dimension / enumeration cap exceeded
  indeterminate = 5,  // solver gave up without a decision
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_parse(const std::string& msg) {
  throw Error(ErrorKind::parse, msg);
}
[[noreturn]] inline void throw_invariant(const std::string& msg) {
  throw Error(ErrorKind::invariant, msg);
}
[[noreturn]] inline void throw_cap(const std::string& msg) {
  throw Error(ErrorKind::cap, msg);
}
[[noreturn]] inline void throw_indeterminate(const std::string& msg) {
  throw Error(ErrorKind::indeterminate, msg);
}

}  // namespace avq
