#include "cli.hpp"

#include "commands.hpp"

#include "tptmap/error.hpp"
#include "tptmap/parallel.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace tptmap::cli {

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return 2;
    case ErrorKind::Data:
      return 3;
    case ErrorKind::Numerical:
      return 4;
  }
  return 4;
}

void report(const std::string& kind, const std::string& module, const std::string& message) {
  Json err;
  err["error"] = {{"kind", kind}, {"module", module}, {"message", message}};
  std::cerr << err.dump() << std::endl;
}

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;
};

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Committors, reactive currents and reaction rates on point clouds"};
  app.require_subcommand(1);
  Options opts;
  using Handler = void (*)(const RunConfig&);
  const std::vector<std::tuple<const char*, const char*, Handler>> commands = {
      {"sample", "Simulate a built-in system and write points, tensors and metadata", cmd_sample},
      {"committor", "Solve the committor and compute current, density and rate", cmd_committor},
      {"fd", "Finite-difference reference committor on a periodic grid", cmd_fd},
      {"sweep", "RMS error against a reference over a list of bandwidths", cmd_sweep},
      {"canalysis", "Committor analysis histogram from a level set", cmd_canalysis},
      {"rate", "Reaction rate by counting transitions along a trajectory", cmd_rate},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, help, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "JSON run configuration")->required();
    sub->add_option("--workers", opts.workers, "Worker threads (default: all hardware threads)");
    sub->add_option("--out", opts.out, "Output directory (overrides the config)");
    sub->add_option("--seed", opts.seed, "Random seed (overrides the config)");
    subs.emplace_back(sub, handler);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("config", "cli", e.what());
    return 2;
  }

  try {
    set_worker_count(opts.workers);
    for (const auto& [sub, handler] : subs) {
      if (sub->parsed()) {
        const RunConfig cfg = load_config(opts.config, opts.out, opts.seed);
        handler(cfg);
      }
    }
  } catch (const Error& e) {
    report(to_string(e.kind()), e.module(), e.detail());
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    report("numerical", "cli", "out of memory");
    return 4;
  } catch (const std::exception& e) {
    report("numerical", "cli", e.what());
    return 4;
  }
  return 0;
}

}  // namespace tptmap::cli
