#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ubdm::cli {

//! Preset text compiled in from presets/<name>.preset.
std::optional<std::string_view> builtin_preset(std::string_view name);
std::vector<std::string> builtin_preset_names();

}  // namespace ubdm::cli
