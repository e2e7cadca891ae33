#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aoicov {

/// Shortest decimal that parses back to the same double; "nan" for NaN.
std::string format_number(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index, or nullopt when absent.
  std::optional<std::size_t> column(std::string_view name) const;
  /// Column index; throws ValidationError naming the missing column.
  std::size_t require_column(std::string_view name) const;
};

/// Comma separated, '\n' line endings, header first. Cells are plain
/// numbers/identifiers, so no quoting is performed.
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

double parse_number(std::string_view cell);

}  // namespace aoicov
