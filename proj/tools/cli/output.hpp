#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ubdm::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kManifestName = "manifest.json";

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string content;
};

//! 17 significant digits, scientific.
std::string format_double(double value);

//! CSV with a manifest comment line, one header row and equal-length columns.
std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& columns);

//! Pretty-printed JSON carrying a "manifest" reference as its first key.
std::string json_document(Json body);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

//! Writes every file under dir, creating directories as needed.
void write_files(const std::filesystem::path& dir, const std::vector<OutputFile>& files);

}  // namespace ubdm::cli
