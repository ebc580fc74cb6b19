#include "spinstar/error.hpp"

namespace spinstar {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidSector: return "invalid-sector";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::InvalidOperator: return "invalid-operator";
    case ErrorKind::SectorMismatch: return "sector-mismatch";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::UndefinedRatio: return "undefined-ratio";
    case ErrorKind::InvalidWindow: return "invalid-window";
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace spinstar
