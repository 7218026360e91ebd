#pragma once

#include <string>

#include "json.hpp"

namespace rgc {

/// Serializes with every floating-point number printed to 17 significant
/// digits, so doubles round-trip exactly. Non-finite numbers become null.
std::string dump_json(const nlohmann::json& j, int indent = -1);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rgc
