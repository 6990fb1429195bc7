#ifndef TSFIT_CSV_HPP
#define TSFIT_CSV_HPP

#include <string>
#include <vector>

#include "tsfit/series.hpp"

namespace tsfit::csv {

// Shortest round-trip decimal rendering, locale-free (dot decimals always).
std::string format_double(double v);

struct IngestResult {
  TimeSeries series;
  std::vector<std::string> warnings;
};

// Reads a header-first CSV (RFC-4180-style quoting) into a TimeSeries.
// Values are parsed strictly: dot decimals, no grouping, the whole cell must
// consume. Dates attach only when every row of date_col parses as a strictly
// increasing ISO-8601 sequence; otherwise the index is dropped with a warning
// (or, when date_col_required, a ParseError for a missing column).
IngestResult ingest(const std::string& path, const std::string& date_col,
                    const std::string& value_col, bool date_col_required = false);

}  // namespace tsfit::csv

#endif  // TSFIT_CSV_HPP
