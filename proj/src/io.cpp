#include "spinorq/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "spinorq/errors.hpp"

namespace spinorq {

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  return fmt::format("{}", v);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> columns)
    : out_(out), width_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  if (cells.size() != width_) {
    throw InvalidArgument(
        fmt::format("CSV row has {} cells, header has {}", cells.size(), width_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out_ << format_number(v);
          } else {
            out_ << v;
          }
        },
        cells[i]);
  }
  out_ << '\n';
}

std::vector<double> CsvTable::column(const std::string& name) const {
  std::size_t idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) idx = i;
  }
  if (idx == header.size()) throw InvalidArgument(fmt::format("no CSV column '{}'", name));
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (idx >= r.size() || r[idx].empty()) {
      out.push_back(std::nan(""));
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(r[idx], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != r[idx].size()) {
      throw InvalidArgument(fmt::format("column '{}': '{}' is not a number", name, r[idx]));
    }
    out.push_back(v);
  }
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (t.header.empty()) {
      t.header = split(line);
    } else {
      t.rows.push_back(split(line));
    }
  }
  if (t.header.empty()) throw InvalidArgument("CSV input has no header row");
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open '{}'", path.string()));
  return read_csv(in);
}

Json json_document() {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  return doc;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

}  // namespace spinorq
