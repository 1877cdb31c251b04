#include "config.hpp"

#include "tptmap/error.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tptmap::cli {

namespace {

constexpr const char* kModule = "cli";

std::string where_key(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double as_double(const Json& v, const std::string& name) {
  if (!v.is_number()) throw_config(kModule, "'" + name + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw_config(kModule, "'" + name + "' must be finite");
  return d;
}

}  // namespace

std::filesystem::path RunConfig::resolve(const std::string& value) const {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base_dir / p;
}

std::filesystem::path RunConfig::path(const std::string& key) const {
  return resolve(get_string(doc, key, ""));
}

std::uint64_t RunConfig::seed(std::uint64_t fallback) const {
  if (seed_override) return *seed_override;
  return get_count(doc, "seed", fallback, "");
}

RunConfig load_config(const std::filesystem::path& file, const std::optional<std::string>& out_override,
                      const std::optional<std::uint64_t>& seed_override) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw_config(kModule, "cannot read config file '" + file.string() + "'");
  RunConfig cfg;
  try {
    cfg.doc = Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw_config(kModule, "config file '" + file.string() + "' is not valid JSON: " + e.what());
  }
  if (!cfg.doc.is_object()) throw_config(kModule, "config root must be a JSON object");
  cfg.base_dir = std::filesystem::absolute(file).parent_path();
  cfg.seed_override = seed_override;
  if (out_override) {
    cfg.out_dir = *out_override;
  } else if (cfg.doc.contains("out")) {
    cfg.out_dir = cfg.resolve(get_string(cfg.doc, "out", ""));
  } else {
    throw_config(kModule, "no output directory: set \"out\" in the config or pass --out");
  }
  return cfg;
}

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw_config(kModule, "'" + (where.empty() ? "config" : where) + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) {
      std::ostringstream msg;
      msg << "unknown key '" << where_key(where, it.key()) << "' (allowed:";
      for (const char* a : allowed) msg << ' ' << a;
      msg << ')';
      throw_config(kModule, msg.str());
    }
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw_config(kModule, "missing required key '" + where_key(where, key) + "'");
  return obj.at(key);
}

double get_double(const Json& obj, const std::string& key, const std::string& where) {
  return as_double(require(obj, key, where), where_key(where, key));
}

double get_double(const Json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? get_double(obj, key, where) : fallback;
}

std::uint64_t get_count(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  throw_config(kModule, "'" + where_key(where, key) + "' must be a nonnegative integer");
}

std::uint64_t get_count(const Json& obj, const std::string& key, std::uint64_t fallback,
                        const std::string& where) {
  return obj.contains(key) ? get_count(obj, key, where) : fallback;
}

std::string get_string(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) throw_config(kModule, "'" + where_key(where, key) + "' must be a string");
  return v.get<std::string>();
}

std::string get_string(const Json& obj, const std::string& key, const std::string& fallback,
                       const std::string& where) {
  return obj.contains(key) ? get_string(obj, key, where) : fallback;
}

bool get_bool(const Json& obj, const std::string& key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw_config(kModule, "'" + where_key(where, key) + "' must be true or false");
  return obj.at(key).get<bool>();
}

std::vector<double> get_doubles(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_array()) throw_config(kModule, "'" + where_key(where, key) + "' must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_double(v[i], where_key(where, key) + "[" + std::to_string(i) + "]"));
  return out;
}

Vec get_vec(const Json& obj, const std::string& key, const std::string& where) {
  const auto v = get_doubles(obj, key, where);
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Topology parse_topology(const Json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) {
    throw_config(kModule, "'" + where + "' must be a non-empty array of periods (number, \"2pi\" or null)");
  }
  std::vector<std::optional<double>> periods;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const Json& p = value[i];
    const std::string name = where + "[" + std::to_string(i) + "]";
    if (p.is_null()) {
      periods.emplace_back(std::nullopt);
    } else if (p.is_string() && p.get<std::string>() == "2pi") {
      periods.emplace_back(2.0 * std::numbers::pi);
    } else {
      periods.emplace_back(as_double(p, name));
    }
  }
  return Topology(std::move(periods));
}

Ellipse parse_ellipse(const Json& value, std::size_t dim, const std::string& where) {
  check_keys(value, {"center", "radius", "shape", "level"}, where);
  const Vec center = get_vec(value, "center", where);
  if (static_cast<std::size_t>(center.size()) != dim) {
    std::ostringstream msg;
    msg << "'" << where << ".center' has " << center.size() << " entries, expected " << dim;
    throw_config(kModule, msg.str());
  }
  if (value.contains("radius")) {
    if (value.contains("shape") || value.contains("level")) {
      throw_config(kModule, "'" + where + "' must give either radius or shape+level, not both");
    }
    const double r = get_double(value, "radius", where);
    if (!(r > 0.0)) throw_config(kModule, "'" + where + ".radius' must be positive");
    return Ellipse::ball(center, r);
  }
  const Json& shape = require(value, "shape", where);
  if (!shape.is_array() || shape.size() != dim) throw_config(kModule, "'" + where + ".shape' must be a d x d array");
  Mat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    if (!shape[r].is_array() || shape[r].size() != dim) {
      throw_config(kModule, "'" + where + ".shape' must be a d x d array");
    }
    for (std::size_t c = 0; c < dim; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = as_double(shape[r][c], where + ".shape");
  }
  try {
    return Ellipse(center, SpdMatrix(m), get_double(value, "level", where));
  } catch (const Error& e) {
    throw_config(kModule, "'" + where + "': " + e.detail());
  }
}

RegionSpec parse_region(const Json& value, std::size_t dim, const std::string& where) {
  if (value.is_object() && value.contains("indices")) {
    check_keys(value, {"indices"}, where);
    const Json& idx = value.at("indices");
    if (!idx.is_array()) throw_config(kModule, "'" + where + ".indices' must be an array");
    IndexList list;
    for (const auto& v : idx) {
      if (!v.is_number_unsigned()) throw_config(kModule, "'" + where + ".indices' must hold nonnegative integers");
      list.indices.push_back(v.get<std::size_t>());
    }
    if (list.indices.empty()) throw_config(kModule, "'" + where + ".indices' is empty");
    return list;
  }
  return parse_ellipse(value, dim, where);
}

SolverOptions parse_solver(const Json& obj, const std::string& where, SolverOptions defaults) {
  if (!obj.contains("solver")) return defaults;
  const Json& s = obj.at("solver");
  const std::string w = where_key(where, "solver");
  check_keys(s, {"direct_max_n", "tolerance", "max_iterations", "dense_fill_threshold"}, w);
  defaults.direct_max_n = get_count(s, "direct_max_n", defaults.direct_max_n, w);
  defaults.tolerance = get_double(s, "tolerance", defaults.tolerance, w);
  defaults.max_iterations = static_cast<int>(get_count(s, "max_iterations", static_cast<std::uint64_t>(defaults.max_iterations), w));
  defaults.dense_fill_threshold = get_double(s, "dense_fill_threshold", defaults.dense_fill_threshold, w);
  return defaults;
}

std::optional<double> parse_epsilon(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (v.is_string()) {
    if (v.get<std::string>() == "heuristic") return std::nullopt;
    throw_config(kModule, "'" + where_key(where, key) + "' must be a positive number or \"heuristic\"");
  }
  const double e = as_double(v, where_key(where, key));
  if (!(e > 0.0)) throw_config(kModule, "'" + where_key(where, key) + "' must be positive");
  return e;
}

}  // namespace tptmap::cli
