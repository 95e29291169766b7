#include "biphoton/trace_io.hpp"

#include "biphoton/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace biphoton {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(trim(cell));
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_number(const std::string& text, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
        // ERANGE also fires for subnormals, which %.17g can legitimately emit.
        if (!(errno == ERANGE && end == text.c_str() + text.size() && std::abs(x) < 1.0)) {
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(line_no) + ": not a number: '" + text + "'");
        }
    }
    return x;
}

TraceKind parse_kind(const std::string& name) {
    for (auto k : {TraceKind::SignalSpectrum, TraceKind::IdlerSpectrum, TraceKind::G1Magnitude,
                   TraceKind::G2}) {
        if (kind_name(k) == name) return k;
    }
    throw Error(ErrorKind::ParseError, "unknown trace kind '" + name + "'");
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const std::string* Table::find_header(const std::string& key) const {
    for (const auto& [k, v] : header) {
        if (k == key) return &v;
    }
    return nullptr;
}

const Column* Table::find_column(const std::string& name) const {
    for (const auto& c : columns) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

void write_csv(std::ostream& out, const Table& table) {
    for (const auto& [key, value] : table.header) out << "# " << key << ": " << value << '\n';
    out << "# columns: ";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c].name;
    }
    out << '\n';
    const std::size_t rows = table.rows();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << format_double(table.columns[c].values.at(r));
        }
        out << '\n';
    }
}

Table read_csv(std::istream& in) {
    Table table;
    bool have_columns = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (line.front() == '#') {
            const std::string body = trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(body.substr(0, colon));
            const std::string value = trim(body.substr(colon + 1));
            if (key == "columns") {
                for (auto& name : split(value, ',')) table.columns.push_back({name, {}});
                have_columns = true;
            } else {
                table.header.emplace_back(key, value);
            }
            continue;
        }
        if (!have_columns) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                                   ": data row before the '# columns:' line");
        }
        const auto cells = split(line, ',');
        if (cells.size() != table.columns.size()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                                   std::to_string(table.columns.size()) +
                                                   " values, found " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            table.columns[c].values.push_back(parse_number(cells[c], line_no));
        }
    }
    return table;
}

void write_json(std::ostream& out, const Table& table) {
    nlohmann::ordered_json doc;
    doc["header"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.header) doc["header"][key] = value;
    doc["columns"] = nlohmann::ordered_json::object();
    for (const auto& c : table.columns) doc["columns"][c.name] = c.values;
    out << doc.dump(1) << '\n';
}

Table trace_table(const Trace& trace, const std::string& axis_column,
                  const std::string& value_column) {
    Table t;
    t.header.emplace_back("kind", std::string(kind_name(trace.meta.kind)));
    if (!trace.meta.tier.empty()) t.header.emplace_back("tier", trace.meta.tier);
    t.header.emplace_back("normalization", std::string(normalization_name(trace.meta.normalization)));
    t.header.emplace_back("scenario_hash", trace.meta.scenario_hash);
    if (trace.meta.center_frequency != 0.0) {
        t.header.emplace_back("center_frequency_rad_per_s", format_double(trace.meta.center_frequency));
    }
    t.columns.push_back({axis_column, trace.axis});
    t.columns.push_back({value_column, trace.values});
    return t;
}

Trace table_trace(const Table& table) {
    if (table.columns.size() < 2) throw Error(ErrorKind::ParseError, "trace needs two columns");
    Trace t;
    t.axis = table.columns[0].values;
    t.values = table.columns[1].values;
    if (const auto* k = table.find_header("kind")) t.meta.kind = parse_kind(*k);
    if (const auto* v = table.find_header("tier")) t.meta.tier = *v;
    if (const auto* v = table.find_header("normalization")) {
        t.meta.normalization = parse_normalization(*v);
    }
    if (const auto* v = table.find_header("scenario_hash")) t.meta.scenario_hash = *v;
    if (const auto* v = table.find_header("center_frequency_rad_per_s")) {
        t.meta.center_frequency = parse_number(*v, 0);
    }
    return t;
}

void write_svg(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y,
               const std::string& title, const std::string& x_label, const std::string& y_label) {
    constexpr double width = 720, height = 420, left = 70, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const std::size_t n = std::min(x.size(), y.size());

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    if (n > 0) {
        x_lo = *std::min_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        x_hi = *std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        y_lo = std::min(0.0, *std::min_element(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n)));
        y_hi = *std::max_element(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    }
    if (!(x_hi > x_lo)) x_hi = x_lo + 1;
    if (!(y_hi > y_lo)) y_hi = y_lo + 1;
    auto px = [&](double v) { return left + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double v) { return top + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape_xml(title) << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"start\">"
        << short_number(x_lo) << "</text>\n";
    out << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"end\">" << short_number(x_hi) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h << "\" text-anchor=\"end\">"
        << short_number(y_lo) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">"
        << short_number(y_hi) << "</text>\n";
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << top + plot_h / 2 << ")\">" << escape_xml(y_label) << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    char buf[64];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(x[i]), py(y[i]));
        out << buf;
    }
    out << "\"/>\n</svg>\n";
}

}  // namespace biphoton
