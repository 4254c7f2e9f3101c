#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcmpf {

// Failure categories surfaced by the library. The CLI prints the code name
// as the first token of its machine-readable error line.
enum class ErrorCode {
  InvalidSize,
  Resource,
  Shape,
  Invalid,
  Configuration,
  UnsupportedLocality,
  SingularSystem,
  Mode,
  Infeasible,
  IllConditioned,
  Input,
  Site,
  Format,
  InsufficientData,
  Domain,
  Saturation,
  Io,
};

std::string_view to_string(ErrorCode code);

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

}  // namespace dcmpf
