#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <ubdm/errors.hpp>

namespace ubdm::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw UsageError("csv: header and columns differ");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw UsageError("csv: ragged columns");
  }
  std::string out = "# manifest: " + std::string(kManifestName) + "\n";
  for (std::size_t j = 0; j < header.size(); ++j) {
    out += (j ? "," : "") + header[j];
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out += ',';
      out += format_double(columns[j][i]);
    }
    out += '\n';
  }
  return out;
}

std::string json_document(Json body) {
  Json doc;
  doc["manifest"] = kManifestName;
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  return doc.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

void write_files(const std::filesystem::path& dir, const std::vector<OutputFile>& files) {
  for (const auto& f : files) {
    const auto path = dir / f.name;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + path.string() + "'");
    out << f.content;
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
  }
}

}  // namespace ubdm::cli
