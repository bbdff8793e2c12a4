#include "knotpi/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace knotpi {

using json = nlohmann::ordered_json;

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (json, csv, text)");
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "json";
}

namespace {

std::string_view type_name(ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return "int";
    case ColumnType::Boolean: return "bool";
    case ColumnType::Rational: return "rational";
    case ColumnType::Text: return "text";
  }
  return "text";
}

ColumnType parse_type(const std::string& s) {
  if (s == "int") return ColumnType::Integer;
  if (s == "bool") return ColumnType::Boolean;
  if (s == "rational") return ColumnType::Rational;
  if (s == "text") return ColumnType::Text;
  throw std::invalid_argument("unknown column type " + s);
}

bool matches(const Cell& c, ColumnType t) {
  return static_cast<std::size_t>(t) == c.index();
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, Rational>) return v.to_string();
        else return v;
      },
      c);
}

std::string field_text(const FieldValue& f) {
  return std::visit([](const auto& v) { return cell_text(Cell(v)); }, f);
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) return v.to_string();
        else return v;
      },
      c);
}

json fields_json(const std::vector<Field>& fields) {
  json out = json::object();
  for (const auto& [k, v] : fields) std::visit([&](const auto& x) { out[k] = x; }, v);
  return out;
}

std::vector<Field> fields_from(const json& j) {
  std::vector<Field> out;
  for (const auto& [k, v] : j.items()) {
    if (v.is_boolean()) out.emplace_back(k, v.get<bool>());
    else if (v.is_number_integer()) out.emplace_back(k, v.get<long long>());
    else if (v.is_string()) out.emplace_back(k, v.get<std::string>());
    else throw std::invalid_argument("field " + k + " has an unsupported type");
  }
  return out;
}

Cell cell_from(const json& v, ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return v.get<long long>();
    case ColumnType::Boolean: return v.get<bool>();
    case ColumnType::Rational: return Rational::parse(v.get<std::string>());
    case ColumnType::Text: return v.get<std::string>();
  }
  throw std::invalid_argument("bad column type");
}

// Hand-laid so that each table row is one line; every value still goes through
// the json library for escaping.
std::string emit_json(const Report& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"schema_version\": " << r.schema_version << ",\n";
  os << "  \"command\": " << json(r.command).dump() << ",\n";
  os << "  \"parameters\": " << fields_json(r.parameters).dump() << ",\n";
  os << "  \"conventions\": [";
  for (std::size_t k = 0; k < r.conventions.size(); ++k)
    os << (k ? "," : "") << "\n    " << json(r.conventions[k]).dump();
  os << (r.conventions.empty() ? "" : "\n  ") << "],\n";
  os << "  \"summary\": " << fields_json(r.summary).dump() << ",\n";
  os << "  \"tables\": [";
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const auto& table = r.tables[t];
    json cols = json::array();
    for (const auto& c : table.columns) cols.push_back({{"name", c.name}, {"type", type_name(c.type)}});
    os << (t ? "," : "") << "\n    {\n";
    os << "      \"name\": " << json(table.name).dump() << ",\n";
    os << "      \"columns\": " << cols.dump() << ",\n";
    os << "      \"rows\": [";
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      json jr = json::array();
      for (const auto& c : table.rows[k]) jr.push_back(cell_json(c));
      os << (k ? "," : "") << "\n        " << jr.dump();
    }
    os << (table.rows.empty() ? "" : "\n      ") << "]\n    }";
  }
  os << (r.tables.empty() ? "" : "\n  ") << "]\n}\n";
  return os.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string emit_csv(const Report& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : r.tables) {
    if (!first) os << "\n# " << t.name << "\n";
    first = false;
    for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << csv_escape(t.columns[k].name);
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_escape(cell_text(row[k]));
      os << "\n";
    }
  }
  return os.str();
}

std::string emit_text(const Report& r) {
  std::ostringstream os;
  os << "knotpi " << r.command;
  for (const auto& [k, v] : r.parameters) os << " " << k << "=" << field_text(v);
  os << "\n";
  for (const auto& c : r.conventions) os << "  note: " << c << "\n";
  for (const auto& t : r.tables) {
    os << "\n[" << t.name << "] " << t.rows.size() << " rows\n";
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t k = 0; k < t.columns.size(); ++k) width[k] = t.columns[k].name.size();
    for (const auto& row : t.rows)
      for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], cell_text(row[k]).size());
    auto line = [&](auto&& text_of) {
      for (std::size_t k = 0; k < t.columns.size(); ++k)
        os << (k ? "  " : "") << std::setw(static_cast<int>(width[k])) << text_of(k);
      os << "\n";
    };
    line([&](std::size_t k) { return t.columns[k].name; });
    for (const auto& row : t.rows) line([&](std::size_t k) { return cell_text(row[k]); });
  }
  if (!r.summary.empty()) {
    os << "\n";
    for (const auto& [k, v] : r.summary) os << k << ": " << field_text(v) << "\n";
  }
  if (r.seconds) os << "elapsed: " << std::fixed << std::setprecision(3) << *r.seconds << " s\n";
  return os.str();
}

}  // namespace

void ReportTable::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width does not match table " + name);
  for (std::size_t k = 0; k < row.size(); ++k)
    if (!matches(row[k], columns[k].type))
      throw std::invalid_argument("cell type mismatch in column " + columns[k].name);
  rows.push_back(std::move(row));
}

const ReportTable* Report::table(std::string_view name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

const FieldValue* Report::summary_value(std::string_view key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return &v;
  return nullptr;
}

std::string emit_report(const Report& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return emit_json(r);
    case OutputFormat::Csv: return emit_csv(r);
    case OutputFormat::Text: return emit_text(r);
  }
  return emit_json(r);
}

Report read_report_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion)
      throw std::invalid_argument("unsupported schema_version " + std::to_string(r.schema_version));
    r.command = j.at("command").get<std::string>();
    r.parameters = fields_from(j.at("parameters"));
    r.conventions = j.at("conventions").get<std::vector<std::string>>();
    r.summary = fields_from(j.at("summary"));
    for (const auto& jt : j.at("tables")) {
      ReportTable t;
      t.name = jt.at("name").get<std::string>();
      for (const auto& c : jt.at("columns"))
        t.columns.push_back({c.at("name").get<std::string>(), parse_type(c.at("type").get<std::string>())});
      for (const auto& jr : jt.at("rows")) {
        if (jr.size() != t.columns.size()) throw std::invalid_argument("row width mismatch in " + t.name);
        std::vector<Cell> row;
        for (std::size_t k = 0; k < jr.size(); ++k) row.push_back(cell_from(jr[k], t.columns[k].type));
        t.rows.push_back(std::move(row));
      }
      r.tables.push_back(std::move(t));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace knotpi
