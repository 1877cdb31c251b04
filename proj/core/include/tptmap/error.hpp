#pragma once

#include <stdexcept>
#include <string>

namespace tptmap {

/// Broad failure category. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Config,     // malformed or inconsistent user input (exit 2)
  Data,       // input data violates an invariant (exit 3)
  Numerical,  // a solve or integration failed (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  /// Message without the "[module]" prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string detail_;
};

[[noreturn]] void throw_config(const std::string& module, const std::string& message);
[[noreturn]] void throw_data(const std::string& module, const std::string& message);
[[noreturn]] void throw_numerical(const std::string& module, const std::string& message);

const char* to_string(ErrorKind kind) noexcept;

}  // namespace tptmap
