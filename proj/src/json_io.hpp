#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "bfamily/probe.hpp"

namespace bfamily::detail {

using nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const ordered_json& j);
void ensure_directory(const std::filesystem::path& dir);

std::string format_double(double x);

ordered_json to_json(const ProbeReport& report);
ordered_json to_json(const ScaleCheck& check);
ordered_json to_json(const TransversalitySample& sample);

}  // namespace bfamily::detail
