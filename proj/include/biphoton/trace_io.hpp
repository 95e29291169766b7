#pragma once

#include "biphoton/trace.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace biphoton {

/// %.17g, enough digits for strtod to give back the same double.
std::string format_double(double x);

struct Column {
    std::string name;  // includes the unit, e.g. "tau_s"
    std::vector<double> values;
};

/// Column-oriented numeric table plus ordered "key: value" header entries.
struct Table {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<Column> columns;

    std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().values.size(); }
    const std::string* find_header(const std::string& key) const;
    const Column* find_column(const std::string& name) const;
};

/// "# key: value" lines, a "# columns: a,b" line, then one comma-separated
/// row per sample.
void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

/// {"header": {...}, "columns": {"name": [...]}} with keys in table order.
void write_json(std::ostream& out, const Table& table);

/// Two-column table from a trace; the header carries kind, tier,
/// normalisation, scenario hash and centre frequency.
Table trace_table(const Trace& trace, const std::string& axis_column,
                  const std::string& value_column);
/// Inverse of trace_table for the first two columns.
Trace table_trace(const Table& table);

/// Minimal static line plot: frame, tick labels at the ends, polyline, title.
void write_svg(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y,
               const std::string& title, const std::string& x_label, const std::string& y_label);

}  // namespace biphoton
