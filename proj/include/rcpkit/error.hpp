#pragma once

#include <stdexcept>
#include <string>

namespace rcpkit {

enum class ErrorKind {
  invalid_argument,
  numeric_failure,
  capacity,
  domain,
  undefined_angle,
  degenerate_measurement,
  degenerate_sample,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::invalid_argument, what);
}

}  // namespace rcpkit
