#include "tptmap/error.hpp"

namespace tptmap {

Error::Error(ErrorKind kind, std::string module, const std::string& message)
    : std::runtime_error("[" + module + "] " + message),
      kind_(kind),
      module_(std::move(module)),
      detail_(message) {}

void throw_config(const std::string& module, const std::string& message) {
  throw Error(ErrorKind::Config, module, message);
}

void throw_data(const std::string& module, const std::string& message) {
  throw Error(ErrorKind::Data, module, message);
}

void throw_numerical(const std::string& module, const std::string& message) {
  throw Error(ErrorKind::Numerical, module, message);
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
      return "config";
    case ErrorKind::Data:
      return "data";
    case ErrorKind::Numerical:
      return "numerical";
  }
  return "unknown";
}

}  // namespace tptmap
