#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>

namespace tptmap::cli {

using Json = nlohmann::ordered_json;

/// Pretty-prints with two-space indentation, keys in insertion order and
/// floating-point numbers at 17 significant digits.
std::string dump(const Json& value);

void write_json(const std::filesystem::path& path, const Json& value);

}  // namespace tptmap::cli
