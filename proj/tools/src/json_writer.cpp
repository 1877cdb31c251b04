#include "json_writer.hpp"

#include "tptmap/csv.hpp"
#include "tptmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace tptmap::cli {

namespace {

void emit(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        emit(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          emit(v[i], indent + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        emit(v[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      // JSON has no representation for non-finite numbers.
      out += std::isfinite(d) ? csv::format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump(const Json& value) {
  std::string out;
  emit(value, 0, out);
  out += "\n";
  return out;
}

void write_json(const std::filesystem::path& path, const Json& value) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw_data("io", "cannot open '" + path.string() + "' for writing");
  os << dump(value);
  if (!os) throw_data("io", "failed writing '" + path.string() + "'");
}

}  // namespace tptmap::cli
