#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grasscode {

enum class Errc {
  NotOrthonormal,
  DimensionMismatch,
  TangencyViolated,
  NotScaledUnitary,
  ZeroTangent,
  BaseMismatch,
  InfeasibleRequest,
  InvalidSize,
  InvalidArgument,
  StructureMissing,
  NotRowSparse,
  Parse,
  Io,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace grasscode
