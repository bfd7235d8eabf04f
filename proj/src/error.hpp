#pragma once

#include <stdexcept>
#include <string>

namespace nf {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  OutOfBounds,
  Io,
  Format,
  Parse,
  Empty,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nf
