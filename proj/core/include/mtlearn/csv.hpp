#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtlearn {

/// Minimal comma-separated table: a header row plus data rows. Fields never
/// contain commas or quotes in the files this library produces (pair ids,
/// codes, and numbers), so no quoting is supported.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws Error{format} when the column is missing.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  std::string to_string() const;
};

CsvTable parse_csv(std::string_view content);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace mtlearn
