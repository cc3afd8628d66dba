#pragma once

#include <stdexcept>
#include <string>

namespace logerg {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDomain = 2,
  kSingular = 3,
  kGridMismatch = 4,
  kNumerical = 5,
  kIo = 6,
};

/// Exception carrying a stable category; the C API maps the category onto
/// its status codes and the message onto logerg_copy_last_error().
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

}  // namespace logerg
