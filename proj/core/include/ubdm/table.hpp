#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace ubdm {

//! Two-column numeric table ("x y" per line, '#' starts a comment).
struct TwoColumnTable {
  std::vector<double> x;
  std::vector<double> y;
};

//! Throws ConfigError naming origin and line on malformed rows.
TwoColumnTable parse_two_column(std::istream& in, const std::string& origin);
TwoColumnTable read_two_column(const std::filesystem::path& path);

//! x strictly increasing and y >= 0; throws ConfigError otherwise.
void validate_density_table(const TwoColumnTable& table, const std::string& origin);

}  // namespace ubdm
