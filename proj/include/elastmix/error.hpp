#pragma once

#include <stdexcept>
#include <string>

namespace elastmix {

enum class ErrorCode {
  InvalidArgument = 1,
  SolverFailure = 2,
  Io = 3,
  Internal = 4,
};

/// Exception carrying one of the library's error categories. The C API maps
/// the category to its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace elastmix
