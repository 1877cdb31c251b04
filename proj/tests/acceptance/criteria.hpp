#pragma once

#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace acceptance {

struct Result {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  /// Records a sub-check; the criterion passes only if every check does.
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

struct Context {
  std::filesystem::path cli;      // tptmap executable
  std::filesystem::path scratch;  // writable directory for CLI runs
};

Result structural_invariants(const Context&);
Result generator_consistency(const Context&);
Result double_well_oracle(const Context&);
Result torus_pipeline(const Context&);
Result fd_self_convergence(const Context&);
Result coordination_kernel(const Context&);
Result lj7_committor_analysis(const Context&);
Result cli_determinism(const Context&);

template <class... Args>
std::string fmt(Args&&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

}  // namespace acceptance
