// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
//
//   tptmap_acceptance --cli PATH [--scratch DIR] [--only N]... [--long]

#include "criteria.hpp"

#include "tptmap/error.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <set>

namespace {

struct Criterion {
  int id;
  const char* name;
  bool long_running;
  acceptance::Result (*run)(const acceptance::Context&);
};

const Criterion kCriteria[] = {
    {1, "structural invariants", false, acceptance::structural_invariants},
    {2, "generator consistency (OU)", false, acceptance::generator_consistency},
    {3, "1D double well vs quadrature", false, acceptance::double_well_oracle},
    {4, "2D torus vs finite differences", false, acceptance::torus_pipeline},
    {5, "finite-difference self-convergence", false, acceptance::fd_self_convergence},
    {6, "coordination kernel and Jacobian", false, acceptance::coordination_kernel},
    {7, "LJ7 committor analysis", true, acceptance::lj7_committor_analysis},
    {8, "CLI determinism", false, acceptance::cli_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  acceptance::Context ctx;
  ctx.scratch = std::filesystem::temp_directory_path() / "tptmap_acceptance";
  std::set<int> only;
  bool run_long = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      ctx.cli = argv[++i];
    } else if (arg == "--scratch" && i + 1 < argc) {
      ctx.scratch = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else if (arg == "--long") {
      run_long = true;
    } else {
      std::cerr << "usage: " << argv[0] << " --cli PATH [--scratch DIR] [--only N]... [--long]\n";
      return 2;
    }
  }

  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    if (c.long_running && !run_long && !only.count(c.id)) {
      std::cout << "criterion " << c.id << " [" << c.name << "]: SKIP (long; pass --long)\n";
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    acceptance::Result r;
    try {
      r = c.run(ctx);
    } catch (const std::exception& e) {
      r.pass = false;
      r.summary = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& d : r.details) std::cout << "    " << d << '\n';
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (r.pass ? "PASS" : "FAIL");
    if (!r.summary.empty()) std::cout << " - " << r.summary;
    std::cout << " (" << acceptance::fmt(secs) << " s)" << std::endl;
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
