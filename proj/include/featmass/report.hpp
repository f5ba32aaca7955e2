#pragma once

#include <string>

#include <json.hpp>

namespace featmass {

// %.17g: every double round-trips exactly and files are byte-stable.
std::string format_double(double v);

// Writes to <path>.tmp then renames, so failures never leave partial files.
void write_file_atomic(const std::string& path, const std::string& content);

void write_json_atomic(const std::string& path, const nlohmann::json& j);

}  // namespace featmass
