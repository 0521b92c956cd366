#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace spinorq {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; NaN becomes an empty field.
std::string format_number(double v);

using CsvCell = std::variant<double, std::int64_t, std::string>;

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns);
  void row(const std::vector<CsvCell>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Numeric column by name; empty fields read as NaN.
  std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// Adds schema_version as the first key.
Json json_document();

void write_json(const std::filesystem::path& path, const Json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace spinorq
