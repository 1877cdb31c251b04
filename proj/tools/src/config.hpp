#pragma once

// Run-configuration parsing. Every object is checked against its allowed
// keys before anything is computed.

#include "json_writer.hpp"

#include "tptmap/committor.hpp"
#include "tptmap/linsolve.hpp"

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tptmap::cli {

struct RunConfig {
  Json doc;
  std::filesystem::path base_dir;  // relative paths resolve against this
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed_override;

  std::filesystem::path path(const std::string& key) const;
  std::filesystem::path resolve(const std::string& value) const;
  std::uint64_t seed(std::uint64_t fallback) const;
};

RunConfig load_config(const std::filesystem::path& file, const std::optional<std::string>& out_override,
                      const std::optional<std::uint64_t>& seed_override);

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where);

const Json& require(const Json& obj, const std::string& key, const std::string& where);
double get_double(const Json& obj, const std::string& key, const std::string& where);
double get_double(const Json& obj, const std::string& key, double fallback, const std::string& where);
std::uint64_t get_count(const Json& obj, const std::string& key, const std::string& where);
std::uint64_t get_count(const Json& obj, const std::string& key, std::uint64_t fallback,
                        const std::string& where);
std::string get_string(const Json& obj, const std::string& key, const std::string& where);
std::string get_string(const Json& obj, const std::string& key, const std::string& fallback,
                       const std::string& where);
bool get_bool(const Json& obj, const std::string& key, bool fallback, const std::string& where);
std::vector<double> get_doubles(const Json& obj, const std::string& key, const std::string& where);
Vec get_vec(const Json& obj, const std::string& key, const std::string& where);

/// Array of periods, with null for unbounded dimensions. "2pi" is accepted
/// as a period.
Topology parse_topology(const Json& value, const std::string& where);

/// {"center": [...], "radius": r}, {"center": [...], "shape": [[...]], "level": l}
/// or {"indices": [...]}.
RegionSpec parse_region(const Json& value, std::size_t dim, const std::string& where);
Ellipse parse_ellipse(const Json& value, std::size_t dim, const std::string& where);

SolverOptions parse_solver(const Json& obj, const std::string& where, SolverOptions defaults = {});

/// Number or the string "heuristic" (returned as nullopt).
std::optional<double> parse_epsilon(const Json& obj, const std::string& key, const std::string& where);

}  // namespace tptmap::cli
