#pragma once

#include <stdexcept>
#include <string>

namespace spinstar {

enum class ErrorKind {
  InvalidParameter,
  InvalidSector,
  InvalidState,
  InvalidOperator,
  SectorMismatch,
  ResourceLimit,
  UndefinedRatio,
  InvalidWindow,
  InvalidGrid,
  InvalidInput,
  Usage,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace spinstar
