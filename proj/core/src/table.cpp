#include "ubdm/table.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ubdm/errors.hpp"

namespace ubdm {

TwoColumnTable parse_two_column(std::istream& in, const std::string& origin) {
  TwoColumnTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
    }
    std::istringstream row(line);
    double a = 0.0;
    double b = 0.0;
    if (!(row >> a)) {
      if (line.find_first_not_of(' ') == std::string::npos) continue;
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected two numbers");
    }
    std::string rest;
    if (!(row >> b) || (row >> rest)) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected exactly two numbers");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": non-finite value");
    }
    table.x.push_back(a);
    table.y.push_back(b);
  }
  return table;
}

TwoColumnTable read_two_column(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table " + path.string());
  return parse_two_column(in, path.string());
}

void validate_density_table(const TwoColumnTable& table, const std::string& origin) {
  if (table.x.size() < 2) throw ConfigError(origin + ": table needs at least two rows");
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    if (i > 0 && !(table.x[i] > table.x[i - 1])) {
      throw ConfigError(origin + ": first column must be strictly increasing (row " +
                        std::to_string(i + 1) + ")");
    }
    if (table.y[i] < 0.0) {
      throw ConfigError(origin + ": negative density at row " + std::to_string(i + 1));
    }
  }
}

}  // namespace ubdm
