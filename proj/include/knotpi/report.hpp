#pragma once

// Reports: what every command prints. A report is a command echo, a few
// summary fields and typed tables. JSON is the canonical form and reads back
// to an equal report; csv and text are for people and spreadsheets.
//
// Timing is kept out of the JSON so identical inputs give identical bytes.

#include "knotpi/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace knotpi {

inline constexpr int kReportSchemaVersion = 1;

enum class OutputFormat { Json, Csv, Text };

OutputFormat parse_output_format(std::string_view name);
std::string_view format_name(OutputFormat f);

enum class ColumnType { Integer, Boolean, Rational, Text };

using Cell = std::variant<long long, bool, Rational, std::string>;
/// Parameters and summary values; no rationals, so JSON types decide the alternative.
using FieldValue = std::variant<long long, bool, std::string>;
using Field = std::pair<std::string, FieldValue>;

struct Column {
  std::string name;
  ColumnType type = ColumnType::Integer;
  friend bool operator==(const Column&, const Column&) = default;
};

struct ReportTable {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; throws std::invalid_argument if a cell does not match its column type.
  void add(std::vector<Cell> row);
  friend bool operator==(const ReportTable&, const ReportTable&) = default;
};

struct Report {
  int schema_version = kReportSchemaVersion;
  std::string command;
  std::vector<Field> parameters;
  std::vector<Field> summary;
  std::vector<std::string> conventions;
  std::vector<ReportTable> tables;
  std::optional<double> seconds;  // text output only

  [[nodiscard]] const ReportTable* table(std::string_view name) const;
  [[nodiscard]] const FieldValue* summary_value(std::string_view key) const;

  /// Equality ignores timing.
  friend bool operator==(const Report& a, const Report& b) {
    return a.schema_version == b.schema_version && a.command == b.command && a.parameters == b.parameters &&
           a.summary == b.summary && a.conventions == b.conventions && a.tables == b.tables;
  }
};

std::string emit_report(const Report& r, OutputFormat format);
/// Inverse of emit_report(r, Json). Throws std::invalid_argument on malformed input.
Report read_report_json(std::string_view text);

}  // namespace knotpi
