#include "criteria.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <map>

namespace acceptance {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Small runs of every subcommand, chained through relative paths so the same
// set can be replayed in any directory.
std::vector<std::pair<std::string, json>> pipeline() {
  const json a = {{"center", {1.5707963267948966, -1.5707963267948966}}, {"radius", 0.5}};
  const json b = {{"center", {-1.5707963267948966, 1.5707963267948966}}, {"radius", 0.5}};
  return {
      {"sample", {{"system", "torus"}, {"beta", 1.0}, {"dt", 1e-3}, {"n_steps", 300000}, {"stride", 150},
                  {"seed", 5}, {"out", "sample"}}},
      {"sample", {{"system", "lj7"}, {"n_steps", 4000}, {"stride", 200}, {"seed", 6}, {"out", "lj7"}}},
      {"committor", {{"points", "sample/points.csv"}, {"tensors", "sample/tensors.csv"},
                     {"topology", {"2pi", "2pi"}}, {"kernel", "mmap"}, {"epsilon", "heuristic"}, {"beta", 1.0},
                     {"A", a}, {"B", b}, {"write_generator", true}, {"out", "committor"}}},
      {"fd", {{"system", "torus"}, {"beta", 1.0}, {"grids", {32, 64}}, {"A", a}, {"B", b},
              {"points", "sample/points.csv"}, {"out", "fd"}}},
      {"sweep", {{"points", "sample/points.csv"}, {"tensors", "sample/tensors.csv"}, {"topology", {"2pi", "2pi"}},
                 {"kernels", {"mmap", "dmap"}}, {"epsilons", {0.02, 0.08}}, {"beta", 1.0}, {"A", a}, {"B", b},
                 {"reference", "fd/q_points.csv"}, {"mask", {{"reference_range", {0.1, 0.9}}}}, {"out", "sweep"}}},
      {"canalysis", {{"system", "torus"}, {"beta", 1.0}, {"points", "sample/points.csv"},
                     {"committor", "committor/committor.csv"}, {"tol", 0.1}, {"n_pt", 5}, {"n_e", 5},
                     {"max_steps", 50000}, {"A", a}, {"B", b}, {"seed", 8}, {"out", "canalysis"}}},
      {"rate", {{"system", "torus"}, {"beta", 1.0}, {"dt", 1e-3}, {"n_steps", 200000}, {"seed", 9}, {"A", a},
                {"B", b}, {"out", "rate"}}},
  };
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension();
    if (ext != ".csv" && ext != ".json" && ext != ".txt") continue;
    if (e.path().parent_path() == dir) continue;  // the configs themselves
    out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return out;
}

bool run_pipeline(const Context& ctx, const fs::path& dir, const std::string& extra, Result& r) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  int step = 0;
  for (const auto& [cmd, cfg] : pipeline()) {
    const fs::path file = dir / (std::to_string(step++) + "_" + cmd + ".json");
    std::ofstream(file) << cfg.dump(2);
    const std::string line = "\"" + ctx.cli.string() + "\" " + cmd + " --config \"" + file.string() + "\"" + extra +
                             " > \"" + (dir / "log.txt").string() + "\" 2>&1";
    const int rc = std::system(line.c_str());
    if (rc != 0) {
      r.check(false, fmt(cmd, " in ", dir.filename().string(), " exited with ", rc, ": ", slurp(dir / "log.txt")));
      return false;
    }
  }
  return true;
}

}  // namespace

Result cli_determinism(const Context& ctx) {
  Result r;
  if (ctx.cli.empty() || !fs::exists(ctx.cli)) {
    r.check(false, "tptmap executable not found (pass --cli)");
    return r;
  }
  const fs::path root = ctx.scratch / "determinism";
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"first", ""}, {"second", ""}, {"threads", " --workers 3"}};
  std::vector<std::map<std::string, std::string>> results;
  for (const auto& [name, extra] : runs) {
    if (!run_pipeline(ctx, root / name, extra, r)) return r;
    results.push_back(outputs(root / name));
  }
  r.note(fmt(results[0].size(), " output files per run"));
  r.check(results[0].size() >= 15, "every command produced its outputs");
  for (std::size_t k = 1; k < results.size(); ++k) {
    std::size_t differing = 0;
    for (const auto& [name, bytes] : results[0]) {
      auto it = results[k].find(name);
      if (it == results[k].end() || it->second != bytes) {
        ++differing;
        r.note(fmt("differs in run '", runs[k].first, "': ", name));
      }
    }
    if (results[k].size() != results[0].size()) ++differing;
    r.check(differing == 0, fmt("run '", runs[k].first, "' byte-identical to run 'first'"));
  }
  r.summary = fmt(runs.size(), " runs x ", results[0].size(), " files");
  return r;
}

}  // namespace acceptance
