#include "tsfit/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsfit/errors.hpp"

namespace tsfit::csv {

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw IoError("number formatting failed");
  return std::string(buf, p);
}

namespace {

// Splits one CSV record, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_record(const std::string& line, std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (quoted) throw ParseError("row " + std::to_string(row) + ": unterminated quoted field");
  fields.push_back(cur);
  return fields;
}

std::string list_columns(const std::vector<std::string>& header) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + header[i] + "\"";
  }
  return out;
}

}  // namespace

IngestResult ingest(const std::string& path, const std::string& date_col,
                    const std::string& value_col, bool date_col_required) {
  if (!std::filesystem::exists(path)) throw FileNotFound("no such file: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open: " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // drop trailing blank records
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty file: " + path);

  if (lines[0].size() >= 3 && static_cast<unsigned char>(lines[0][0]) == 0xEF &&
      static_cast<unsigned char>(lines[0][1]) == 0xBB &&
      static_cast<unsigned char>(lines[0][2]) == 0xBF) {
    lines[0].erase(0, 3);  // UTF-8 BOM
  }

  const std::vector<std::string> header = split_record(lines[0], 1);
  long value_idx = -1, date_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == value_col) value_idx = static_cast<long>(i);
    if (!date_col.empty() && header[i] == date_col) date_idx = static_cast<long>(i);
  }
  if (value_idx < 0) {
    throw ParseError("value column \"" + value_col + "\" not found; available columns: " +
                     list_columns(header));
  }

  IngestResult out;
  if (!date_col.empty() && date_idx < 0) {
    if (date_col_required) {
      throw ParseError("date column \"" + date_col + "\" not found; available columns: " +
                       list_columns(header));
    }
    out.warnings.push_back("date column \"" + date_col + "\" not found; index omitted");
  }

  std::vector<double> values;
  std::vector<Date> dates;
  bool dates_ok = date_idx >= 0;
  std::string date_warning;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li + 1;  // 1-based, header is row 1
    if (lines[li].empty()) continue;
    const std::vector<std::string> fields = split_record(lines[li], row);
    if (fields.size() != header.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }

    const std::string& cell = fields[static_cast<std::size_t>(value_idx)];
    if (cell.empty()) {
      throw ParseError("row " + std::to_string(row) + ": empty value in column \"" + value_col +
                       "\"");
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || p != cell.data() + cell.size()) {
      throw NonNumericValue("row " + std::to_string(row) + ": cannot parse \"" + cell +
                            "\" as a number (dot decimals, no grouping)");
    }
    values.push_back(v);

    if (dates_ok) {
      const std::string& dcell = fields[static_cast<std::size_t>(date_idx)];
      std::optional<Date> d = Date::parse(dcell);
      if (!d) {
        dates_ok = false;
        date_warning = "row " + std::to_string(row) + ": \"" + dcell +
                       "\" is not an ISO-8601 date; index omitted";
      } else if (!dates.empty() && !(dates.back() < *d)) {
        dates_ok = false;
        date_warning = "row " + std::to_string(row) + ": dates are not strictly increasing; " +
                       "index omitted";
      } else {
        dates.push_back(*d);
      }
    }
  }

  if (values.empty()) throw ParseError("no data rows in " + path);
  if (date_idx >= 0 && !dates_ok) out.warnings.push_back(date_warning);

  out.series = make_series(std::move(values), dates_ok ? std::move(dates) : std::vector<Date>{});
  return out;
}

}  // namespace tsfit::csv
